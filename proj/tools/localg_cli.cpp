// Batch front-end: parse JSON documents describing rings, sigma-sets,
// matrices, triples, complexes, and forms; dispatch to the library; print one
// machine-readable JSON result. Exit codes: 0 success, 1 domain error,
// 2 parse or document-invariant error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "localg/localg.hpp"

namespace {

using namespace localg;

struct Opts {
    std::string ring_file, sigma_file, out_file;
    std::vector<std::string> in_files;
    std::string side = "symmetric";
    int max_i = 1;
    int deg = 0;
    int eps = 1;
    int x_rank = 0, y_rank = 0;
    long long bound = 10000;
    bool localized = false;
};

void add_io_options(CLI::App* cmd, Opts& o) {
    cmd->add_option("--ring", o.ring_file, "document supplying the default ring");
    cmd->add_option("--sigma", o.sigma_file, "document supplying the default sigma");
    cmd->add_option("--in", o.in_files, "input document (repeatable)");
    cmd->add_option("--out", o.out_file, "output file (default stdout)");
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("parse", "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<Document> collect_inputs(const Opts& o) {
    std::vector<Document> docs;
    if (o.in_files.empty()) {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        std::string text = ss.str();
        if (text.find_first_not_of(" \t\r\n") == std::string::npos)
            fail("parse", "no input documents");
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            fail("parse", e.what());
        }
        if (j.is_array())
            for (const json& d : j) docs.push_back(parse_document(d));
        else
            docs.push_back(parse_document(j));
    } else {
        for (const std::string& path : o.in_files) docs.push_back(parse_document(read_file(path)));
    }
    return docs;
}

struct Defaults {
    std::optional<RingDescriptor> ring;
    std::optional<SigmaSet> sigma;
};

Defaults load_defaults(const Opts& o) {
    Defaults d;
    if (!o.ring_file.empty()) {
        Document doc = parse_document(read_file(o.ring_file));
        if (!doc.ring) fail("parse", "'" + o.ring_file + "' does not declare a ring");
        d.ring = doc.ring;
        if (doc.sigma) d.sigma = doc.sigma;
    }
    if (!o.sigma_file.empty()) {
        Document doc = parse_document(read_file(o.sigma_file));
        if (!doc.sigma) fail("parse", "'" + o.sigma_file + "' does not declare a sigma");
        d.sigma = doc.sigma;
        if (!d.ring) d.ring = doc.ring;
    }
    return d;
}

RingDescriptor effective_ring(const Document& doc, const Defaults& d) {
    if (doc.ring) return *doc.ring;
    if (d.ring) return *d.ring;
    fail("parse", "no ring: declare one in the document or pass --ring");
}

SigmaSet effective_sigma(const Document& doc, const Defaults& d) {
    if (doc.sigma) return *doc.sigma;
    if (d.sigma) return *d.sigma;
    fail("parse", "no sigma: declare one in the document or pass --sigma");
}

const json& need_payload(const Document& doc, const std::string& kind) {
    if (doc.payload_kind != kind)
        fail("parse", "expected a '" + kind + "' payload, got '" +
                          (doc.payload_kind.empty() ? "none" : doc.payload_kind) + "'");
    return doc.payload;
}

void emit(const Opts& o, const json& j) {
    std::string text = j.dump();
    if (o.out_file.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(o.out_file);
        if (!f) fail("parse", "cannot write '" + o.out_file + "'");
        f << text << "\n";
    }
}

json full_document(const RingDescriptor& ring, const std::optional<SigmaSet>& sigma,
                   const std::string& kind, json payload) {
    Document doc;
    doc.ring = ring;
    doc.sigma = sigma;
    doc.payload_kind = kind;
    doc.payload = std::move(payload);
    return document_to_json(doc);
}

// --- localize ---------------------------------------------------------------

CohnTriple doc_triple(const Document& doc, const Defaults& d) {
    const json& p = need_payload(doc, "triple");
    return triple_from_json(effective_sigma(doc, d), p);
}

void run_localize_eval(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "eval takes exactly one triple document");
    OreFraction v = triple_eval_ore(doc_triple(docs[0], d));
    emit(o, json{{"fraction", frac_to_string(v)}});
}

void run_localize_binop(const Opts& o, bool mul) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 2) fail("parse", "binary operations take exactly two triple documents");
    CohnTriple a = doc_triple(docs[0], d), b = doc_triple(docs[1], d);
    CohnTriple c = mul ? triple_mul(a, b) : triple_add(a, b);
    emit(o, full_document(c.sigma.ring, c.sigma, "triple", triple_to_json(c)));
}

void run_localize_eq(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 2) fail("parse", "eq takes exactly two triple documents");
    emit(o, json{{"equal", triple_eq(doc_triple(docs[0], d), doc_triple(docs[1], d))}});
}

// --- complex ----------------------------------------------------------------

ChainComplex doc_complex(const Document& doc, const RingDescriptor& ring) {
    return complex_from_json(ring, need_payload(doc, "complex"));
}

void run_complex_validate(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "validate takes exactly one complex document");
    ChainComplex C = doc_complex(docs[0], effective_ring(docs[0], d));
    emit(o, json{{"lo", C.lo}, {"ok", true}, {"ranks", C.ranks}});
}

void run_complex_homology(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "homology takes exactly one complex document");
    ChainComplex C = doc_complex(docs[0], effective_ring(docs[0], d));
    HomologyResult h = o.localized ? localized_homology(C, effective_sigma(docs[0], d))
                                   : homology_any(C);
    emit(o, homology_to_json(h));
}

void run_complex_cone(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "cone takes exactly one chain_map document");
    RingDescriptor ring = effective_ring(docs[0], d);
    ChainMap f = chain_map_from_json(ring, need_payload(docs[0], "chain_map"));
    emit(o, full_document(ring, std::nullopt, "complex", complex_to_json(cone(f))));
}

void run_complex_tor(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    std::vector<DegreeHomology> tor;
    if (o.localized) {
        if (docs.size() != 1) fail("parse", "localized tor takes one matrix document");
        RingDescriptor ring = effective_ring(docs[0], d);
        ModulePresentation M =
            module_make(ring, matrix_from_json(ring, need_payload(docs[0], "matrix")));
        tor = tor_z_localized(M, effective_sigma(docs[0], d), o.max_i);
    } else {
        if (docs.size() != 2) fail("parse", "tor takes exactly two matrix documents");
        RingDescriptor ring = effective_ring(docs[0], d);
        require_same_ring(ring, effective_ring(docs[1], d));
        ModulePresentation M =
            module_make(ring, matrix_from_json(ring, need_payload(docs[0], "matrix")));
        ModulePresentation N =
            module_make(ring, matrix_from_json(ring, need_payload(docs[1], "matrix")));
        tor = ring.kind == RingKind::Integers ? tor_z(M, N, o.max_i) : tor_field(M, N, o.max_i);
    }
    json out = json::array();
    for (size_t i = 0; i < tor.size(); ++i)
        out.push_back({{"free", tor[i].free_rank},
                       {"i", int(i)},
                       {"torsion", torsion_list_to_json(tor[i].torsion)}});
    emit(o, json{{"Tor", out}});
}

void run_complex_localize(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "localize takes exactly one complex document");
    RingDescriptor ring = effective_ring(docs[0], d);
    SigmaSet sigma = effective_sigma(docs[0], d);
    if (sigma.mode != SigmaSet::Mode::Central)
        fail("unsupported", "triple-entry localized complexes have no document form");
    ChainComplex C = doc_complex(docs[0], ring);
    LocalizedComplex L = localize_complex_central(C, sigma);
    emit(o, full_document(ring, sigma, "complex", complex_to_json(L.cx)));
}

// --- lift -------------------------------------------------------------------

LocalizedComplex doc_localized_complex(const Document& doc, const Defaults& d) {
    RingDescriptor ring = effective_ring(doc, d);
    SigmaSet sigma = effective_sigma(doc, d);
    if (ring.kind != RingKind::Integers || sigma.mode != SigmaSet::Mode::Central)
        fail("unsupported", "localized complex documents run over Z with central sigma");
    ChainComplex C =
        complex_from_json(RingDescriptor::rationals(), need_payload(doc, "complex"));
    return LocalizedComplex{sigma, C};
}

void run_lift_clear(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "clear takes exactly one localized complex document");
    LiftResult r = lift_by_clearing(doc_localized_complex(docs[0], d));
    json units = json::array();
    for (const Rat& u : r.units) units.push_back(rat_str(u));
    emit(o, json{{"lifted", complex_to_json(r.lifted)},
                 {"status", verify_status_name(r.status)},
                 {"units", units}});
}

void run_lift_verify(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 2 && docs.size() != 3)
        fail("parse", "verify takes an integral complex, a localized complex, and an optional chain map");
    ChainComplex C = doc_complex(docs[0], effective_ring(docs[0], d));
    LocalizedComplex D = doc_localized_complex(docs[1], d);
    std::optional<ChainMap> phi;
    if (docs.size() == 3)
        phi = chain_map_from_json(RingDescriptor::rationals(), need_payload(docs[2], "chain_map"));
    emit(o, json{{"status", verify_status_name(verify_lift(C, D, phi))}});
}

void run_lift_shorten(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 3)
        fail("parse", "shorten takes a complex document and two matrix documents (r, g)");
    RingDescriptor ring = effective_ring(docs[0], d);
    SigmaSet sigma = effective_sigma(docs[0], d);
    ChainComplex C = doc_complex(docs[0], ring);
    Matrix r = matrix_from_json(ring, need_payload(docs[1], "matrix"));
    Matrix g = matrix_from_json(ring, need_payload(docs[2], "matrix"));
    ShortenResult res = shorten_left(C, sigma, o.x_rank, o.y_rank, r, g);
    emit(o, json{{"complex", complex_to_json(res.shortened)},
                 {"status", verify_status_name(res.status)}});
}

void run_lift_toda(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "toda takes exactly one complex document");
    RingDescriptor ring = effective_ring(docs[0], d);
    SigmaSet sigma = effective_sigma(docs[0], d);
    ObstructionReport rep;
    if (sigma.mode == SigmaSet::Mode::Matrices) {
        ChainComplex C = doc_complex(docs[0], ring);
        rep = toda_obstruction(localize_complex_free(C, sigma));
    } else {
        rep = toda_obstruction(doc_localized_complex(docs[0], d));
    }
    emit(o, json{{"class_zero", rep.class_zero},
                 {"reason", rep.reason},
                 {"status", rep.status},
                 {"target_trivial", rep.target_trivial}});
}

// --- ltheory ----------------------------------------------------------------

void run_ltheory_qgroup(const Opts& o) {
    Defaults d = load_defaults(o);
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "qgroup takes exactly one complex document");
    if (o.side != "symmetric" && o.side != "quadratic")
        fail("parse", "--side must be 'symmetric' or 'quadratic'");
    ChainComplex C = doc_complex(docs[0], effective_ring(docs[0], d));
    QSide side = o.side == "symmetric" ? QSide::Symmetric : QSide::Quadratic;
    DegreeHomology h = q_group(C, o.eps, o.deg, side);
    emit(o, json{{"Q", {{"deg", h.degree},
                        {"free", h.free_rank},
                        {"torsion", torsion_list_to_json(h.torsion)}}}});
}

void run_ltheory_boundary(const Opts& o) {
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "boundary takes exactly one form document");
    const json& p = need_payload(docs[0], "form");
    if (!p.is_object() || !p.contains("matrix")) fail("parse", "form needs a 'matrix'");
    int eps = 1;
    if (p.contains("eps")) {
        if (!p.at("eps").is_number_integer()) fail("parse", "'eps' must be +1 or -1");
        eps = p.at("eps").get<int>();
    }
    Matrix S = matrix_from_json(RingDescriptor::integers(), p.at("matrix"));
    LinkingForm L = boundary_linking_form(S, eps);
    emit(o, json{{"module", torsion_list_to_json(torsion_invariants(L.mod))},
                 {"pairing", matrix_to_json(L.pairing)}});
}

void run_ltheory_linking(const Opts& o) {
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "linking takes exactly one document");
    const Document& doc = docs[0];
    if (doc.payload_kind == "triple") {
        // Pairing query: the value f s^-1 g modulo Z of the form presented
        // by s, at the classes picked out by f and g.
        const json& p = doc.payload;
        if (!p.contains("f") || !p.contains("s") || !p.contains("g"))
            fail("parse", "triple needs 'f', 's', 'g'");
        RingDescriptor Z = RingDescriptor::integers();
        TorsionModulePresentation M{matrix_from_json(Z, p.at("s"))};
        Rat v = linking_pairing(M, matrix_from_json(Z, p.at("f")),
                                matrix_from_json(Z, p.at("g")));
        emit(o, json{{"value", rat_str(v)}});
        return;
    }
    LinkingForm L = linking_form_from_json(need_payload(doc, "linking_form"));
    emit(o, json{{"nonsingular", linking_nonsingular(L)}});
}

void run_ltheory_dual(const Opts& o) {
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "dual takes exactly one matrix document");
    Matrix s = matrix_from_json(RingDescriptor::integers(), need_payload(docs[0], "matrix"));
    TorsionModulePresentation M = torsion_make(std::move(s));
    TorsionModulePresentation D = torsion_dual(M);
    emit(o, json{{"double_dual_ok", double_dual_check(M)},
                 {"dual", matrix_to_json(D.s)},
                 {"module", torsion_list_to_json(torsion_invariants(D))}});
}

void run_ltheory_witt(const Opts& o) {
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() != 1) fail("parse", "witt takes exactly one linking_form document");
    LinkingForm L = linking_form_from_json(need_payload(docs[0], "linking_form"));
    WittResult r = witt_metabolic_test(L, Int(o.bound));
    emit(o, json{{"metabolic", r.metabolic}, {"reason", r.reason}});
}

void run_ltheory_extension(const Opts& o) {
    std::vector<Document> docs = collect_inputs(o);
    if (docs.size() < 3)
        fail("parse", "extension takes matrix documents: M, N, then at least one lift");
    RingDescriptor Z = RingDescriptor::integers();
    TorsionModulePresentation M =
        torsion_make(matrix_from_json(Z, need_payload(docs[0], "matrix")));
    TorsionModulePresentation N =
        torsion_make(matrix_from_json(Z, need_payload(docs[1], "matrix")));
    std::vector<Matrix> lifts;
    for (size_t i = 2; i < docs.size(); ++i)
        lifts.push_back(matrix_from_json(Z, need_payload(docs[i], "matrix")));
    ExtensionResult r = extension_iv(M, N, lifts);
    emit(o, json{{"certificates",
                  {{"kernel", r.kernel_certificate}, {"order", r.order_certificate}}},
                 {"module", torsion_list_to_json(torsion_invariants(r.L))},
                 {"presentation", matrix_to_json(r.L.s)}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for noncommutative localizations, chain complexes, "
                 "lifting, and linking forms"};
    app.require_subcommand(1);
    Opts o;

    CLI::App* localize = app.add_subcommand("localize", "fraction and triple arithmetic");
    localize->require_subcommand(1);
    CLI::App* lz_eval = localize->add_subcommand("eval", "evaluate a triple over an Ore backend");
    CLI::App* lz_add = localize->add_subcommand("add", "sum of two triples");
    CLI::App* lz_mul = localize->add_subcommand("mul", "product of two triples");
    CLI::App* lz_eq = localize->add_subcommand("eq", "decide equality of two triples");

    CLI::App* cx = app.add_subcommand("complex", "chain complex operations");
    cx->require_subcommand(1);
    CLI::App* cx_validate = cx->add_subcommand("validate", "check shapes and d^2 = 0");
    CLI::App* cx_homology = cx->add_subcommand("homology", "homology groups per degree");
    cx_homology->add_flag("--localized", o.localized, "homology over sigma^-1 R");
    CLI::App* cx_cone = cx->add_subcommand("cone", "mapping cone of a chain map");
    CLI::App* cx_tor = cx->add_subcommand("tor", "Tor of two presented modules");
    cx_tor->add_option("--max", o.max_i, "highest Tor degree to report (default 1)");
    cx_tor->add_flag("--localized", o.localized, "Tor against sigma^-1 R itself");
    CLI::App* cx_localize = cx->add_subcommand("localize", "entries mapped to sigma^-1 R");

    CLI::App* lift = app.add_subcommand("lift", "denominator clearing and obstructions");
    lift->require_subcommand(1);
    CLI::App* lf_clear = lift->add_subcommand("clear", "lift by clearing denominators");
    CLI::App* lf_verify = lift->add_subcommand("verify", "does the complex present the localization");
    CLI::App* lf_shorten = lift->add_subcommand("shorten", "shorten on the left");
    lf_shorten->add_option("--x", o.x_rank, "rank of the degree-0 summand X")->required();
    lf_shorten->add_option("--y", o.y_rank, "rank of the degree -1 summand Y")->required();
    CLI::App* lf_toda = lift->add_subcommand("toda", "length-3 lifting obstruction report");

    CLI::App* lt = app.add_subcommand("ltheory", "structures, duals, linking forms");
    lt->require_subcommand(1);
    CLI::App* lt_qgroup = lt->add_subcommand("qgroup", "Q-group of a complex");
    lt_qgroup->add_option("--deg", o.deg, "degree n")->required();
    lt_qgroup->add_option("--eps", o.eps, "sign +1 or -1 (default +1)");
    lt_qgroup->add_option("--side", o.side, "symmetric or quadratic (default symmetric)");
    CLI::App* lt_boundary = lt->add_subcommand("boundary", "boundary linking form of a form matrix");
    CLI::App* lt_linking = lt->add_subcommand("linking", "pairing value or nonsingularity");
    CLI::App* lt_dual = lt->add_subcommand("dual", "torsion dual of a presentation");
    CLI::App* lt_witt = lt->add_subcommand("witt", "metabolic subgroup search");
    lt_witt->add_option("--bound", o.bound, "largest module order searched (default 10000)");
    CLI::App* lt_extension = lt->add_subcommand("extension", "extension of N by copies of M^");

    for (CLI::App* leaf : {lz_eval, lz_add, lz_mul, lz_eq, cx_validate, cx_homology, cx_cone,
                           cx_tor, cx_localize, lf_clear, lf_verify, lf_shorten, lf_toda,
                           lt_qgroup, lt_boundary, lt_linking, lt_dual, lt_witt, lt_extension})
        add_io_options(leaf, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (lz_eval->parsed()) run_localize_eval(o);
        else if (lz_add->parsed()) run_localize_binop(o, false);
        else if (lz_mul->parsed()) run_localize_binop(o, true);
        else if (lz_eq->parsed()) run_localize_eq(o);
        else if (cx_validate->parsed()) run_complex_validate(o);
        else if (cx_homology->parsed()) run_complex_homology(o);
        else if (cx_cone->parsed()) run_complex_cone(o);
        else if (cx_tor->parsed()) run_complex_tor(o);
        else if (cx_localize->parsed()) run_complex_localize(o);
        else if (lf_clear->parsed()) run_lift_clear(o);
        else if (lf_verify->parsed()) run_lift_verify(o);
        else if (lf_shorten->parsed()) run_lift_shorten(o);
        else if (lf_toda->parsed()) run_lift_toda(o);
        else if (lt_qgroup->parsed()) run_ltheory_qgroup(o);
        else if (lt_boundary->parsed()) run_ltheory_boundary(o);
        else if (lt_linking->parsed()) run_ltheory_linking(o);
        else if (lt_dual->parsed()) run_ltheory_dual(o);
        else if (lt_witt->parsed()) run_ltheory_witt(o);
        else if (lt_extension->parsed()) run_ltheory_extension(o);
    } catch (const Error& e) {
        std::cout << json{{"kind", e.kind}, {"message", e.what()}}.dump() << "\n";
        return e.kind == "parse" || e.kind == "semantic" ? 2 : 1;
    }
    return 0;
}
