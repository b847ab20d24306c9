#pragma once

#include <json.hpp>
#include <limits>
#include <optional>
#include <string>

#include "localg/complex.hpp"
#include "localg/ltheory.hpp"
#include "localg/triple.hpp"

namespace localg {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Ring and sigma descriptors
// ---------------------------------------------------------------------------

inline json ring_to_json(const RingDescriptor& r) {
    switch (r.kind) {
        case RingKind::Integers: return {{"kind", "Z"}};
        case RingKind::Rationals: return {{"kind", "Q"}};
        case RingKind::PrimeField: return {{"kind", "Fp"}, {"p", r.p.str()}};
        case RingKind::FreeAlgebra:
            return {{"kind", "free"}, {"base", ring_to_json(r.base_ring())}, {"vars", r.vars}};
    }
    fail("semantic", "unknown ring kind");
}

inline RingDescriptor ring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        fail("parse", "ring descriptor needs a string 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "Z") return RingDescriptor::integers();
    if (kind == "Q") return RingDescriptor::rationals();
    if (kind == "Fp") {
        if (!j.contains("p")) fail("parse", "Fp ring needs a prime 'p'");
        Int p;
        if (j.at("p").is_string())
            p = Int(j.at("p").get<std::string>());
        else if (j.at("p").is_number_integer())
            p = Int(j.at("p").get<long long>());
        else
            fail("parse", "'p' must be an integer or integer string");
        return RingDescriptor::prime_field(p);
    }
    if (kind == "free") {
        if (!j.contains("base") || !j.contains("vars"))
            fail("parse", "free ring needs 'base' and 'vars'");
        RingDescriptor base = ring_from_json(j.at("base"));
        if (!j.at("vars").is_number_integer()) fail("parse", "'vars' must be an integer");
        return RingDescriptor::free_algebra(base, j.at("vars").get<int>());
    }
    fail("parse", "unknown ring kind '" + kind + "'");
}

inline json sigma_to_json(const SigmaSet& s) {
    if (s.mode == SigmaSet::Mode::Matrices) return {{"mode", "matrix"}};
    if (s.all_nonzero) return {{"all_nonzero", true}, {"mode", "central"}};
    json gens = json::array();
    for (const Scalar& g : s.generators) gens.push_back(s_to_string(g));
    return {{"generators", gens}, {"mode", "central"}};
}

inline SigmaSet sigma_from_json(const RingDescriptor& ring, const json& j) {
    if (!j.is_object() || !j.contains("mode") || !j.at("mode").is_string())
        fail("parse", "sigma descriptor needs a string 'mode'");
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "matrix") return SigmaSet::augmentation_invertible(ring);
    if (mode != "central") fail("parse", "unknown sigma mode '" + mode + "'");
    if (j.value("all_nonzero", false)) return SigmaSet::all_nonzero_of(ring);
    std::vector<Scalar> gens;
    if (j.contains("generators")) {
        if (!j.at("generators").is_array()) fail("parse", "'generators' must be an array");
        for (const json& g : j.at("generators")) {
            if (g.is_string())
                gens.push_back(s_parse(ring, g.get<std::string>()));
            else if (g.is_number_integer())
                gens.push_back(s_from_int(ring, long(g.get<long long>())));
            else
                fail("parse", "sigma generator must be a string or integer");
        }
    }
    return SigmaSet::central(ring, std::move(gens));
}

// ---------------------------------------------------------------------------
// Scalars, matrices, complexes, maps, triples, forms
// ---------------------------------------------------------------------------

inline Scalar scalar_from_json(const RingDescriptor& ring, const json& j) {
    if (j.is_string()) return s_parse(ring, j.get<std::string>());
    if (j.is_number_integer()) return s_from_int(ring, long(j.get<long long>()));
    fail("parse", "scalar entries must be strings or integers");
}

inline Matrix matrix_from_json(const RingDescriptor& ring, const json& j) {
    if (!j.is_array()) fail("parse", "matrix must be an array of rows");
    int rows = int(j.size());
    int cols = -1;
    for (const json& row : j) {
        if (!row.is_array()) fail("parse", "matrix rows must be arrays");
        if (cols < 0)
            cols = int(row.size());
        else if (cols != int(row.size()))
            fail("parse", "matrix rows have unequal lengths");
    }
    if (cols < 0) cols = 0;
    Matrix m = m_zero(ring, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(ring, j.at(r).at(c));
    return m;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) row.push_back(s_to_string(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ChainComplex complex_from_json(const RingDescriptor& ring, const json& j) {
    if (!j.is_object() || !j.contains("ranks")) fail("parse", "complex needs 'ranks'");
    int lo = 0;
    if (j.contains("lo")) {
        if (!j.at("lo").is_number_integer()) fail("parse", "'lo' must be an integer");
        lo = j.at("lo").get<int>();
    }
    std::vector<int> ranks;
    if (!j.at("ranks").is_array()) fail("parse", "'ranks' must be an array");
    for (const json& r : j.at("ranks")) {
        if (!r.is_number_integer() || r.get<long long>() < 0)
            fail("parse", "ranks must be nonnegative integers");
        ranks.push_back(r.get<int>());
    }
    std::vector<Matrix> diffs;
    if (j.contains("diffs")) {
        if (!j.at("diffs").is_array()) fail("parse", "'diffs' must be an array");
        for (const json& d : j.at("diffs")) diffs.push_back(matrix_from_json(ring, d));
    }
    size_t expect = ranks.size() > 1 ? ranks.size() - 1 : 0;
    if (diffs.size() != expect)
        fail("parse", "expected " + std::to_string(expect) + " differentials");
    return cx_make(ring, lo, std::move(ranks), std::move(diffs));
}

inline json complex_to_json(const ChainComplex& C) {
    json diffs = json::array();
    for (const Matrix& d : C.diffs) diffs.push_back(matrix_to_json(d));
    return {{"diffs", diffs}, {"lo", C.lo}, {"ranks", C.ranks}};
}

inline ChainMap chain_map_from_json(const RingDescriptor& ring, const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target"))
        fail("parse", "chain map needs 'source' and 'target'");
    ChainComplex src = complex_from_json(ring, j.at("source"));
    ChainComplex tgt = complex_from_json(ring, j.at("target"));
    std::vector<Matrix> comps;
    for (int n = src.lo; n <= src.hi(); ++n)
        comps.push_back(m_zero(ring, tgt.rank_at(n), src.rank_at(n)));
    if (j.contains("components")) {
        if (!j.at("components").is_array()) fail("parse", "'components' must be an array");
        const json& cs = j.at("components");
        if (int(cs.size()) != int(comps.size()))
            fail("parse", "expected one component per source degree");
        for (size_t i = 0; i < cs.size(); ++i) comps[i] = matrix_from_json(ring, cs.at(i));
    }
    return map_make(std::move(src), std::move(tgt), std::move(comps));
}

inline CohnTriple triple_from_json(const SigmaSet& sigma, const json& j) {
    if (!j.is_object() || !j.contains("f") || !j.contains("s") || !j.contains("g"))
        fail("parse", "triple needs 'f', 's', 'g'");
    return triple_make(sigma, matrix_from_json(sigma.ring, j.at("f")),
                       matrix_from_json(sigma.ring, j.at("s")),
                       matrix_from_json(sigma.ring, j.at("g")));
}

inline json triple_to_json(const CohnTriple& t) {
    return {{"f", matrix_to_json(t.f)}, {"g", matrix_to_json(t.g)},
            {"s", matrix_to_json(t.s)}};
}

inline LinkingForm linking_form_from_json(const json& j) {
    if (!j.is_object() || !j.contains("presentation") || !j.contains("pairing"))
        fail("parse", "linking form needs 'presentation' and 'pairing'");
    int eps = 1;
    if (j.contains("eps")) {
        if (!j.at("eps").is_number_integer()) fail("parse", "'eps' must be +1 or -1");
        eps = j.at("eps").get<int>();
    }
    LinkingForm L{
        TorsionModulePresentation{
            matrix_from_json(RingDescriptor::integers(), j.at("presentation"))},
        matrix_from_json(RingDescriptor::rationals(), j.at("pairing")), eps};
    linking_validate(L);
    return L;
}

inline json int_to_json(const Int& d) {
    if (d <= Int(std::numeric_limits<long long>::max()) &&
        d >= Int(std::numeric_limits<long long>::min()))
        return json(d.convert_to<long long>());
    return json(d.str());
}

inline json torsion_list_to_json(const std::vector<Int>& t) {
    json out = json::array();
    for (const Int& d : t) out.push_back(int_to_json(d));
    return out;
}

inline json homology_to_json(const HomologyResult& h) {
    json H = json::array();
    for (const DegreeHomology& d : h)
        H.push_back({{"deg", d.degree},
                     {"free", d.free_rank},
                     {"torsion", torsion_list_to_json(d.torsion)}});
    return {{"H", H}};
}

// ---------------------------------------------------------------------------
// Documents
// ---------------------------------------------------------------------------

/// Envelope for every input: version header, optional ring and sigma
/// descriptors, and a payload holding exactly one object. Payload content is
/// interpreted by the command handlers, which know the intended entry ring.
struct Document {
    std::string version = "1";
    std::optional<RingDescriptor> ring;
    std::optional<SigmaSet> sigma;
    std::string payload_kind; // empty when the document only sets ring/sigma
    json payload;
};

inline const std::vector<std::string>& known_payload_kinds() {
    static const std::vector<std::string> kinds{
        "matrix", "triple", "fraction", "complex", "chain_map", "form", "linking_form"};
    return kinds;
}

inline Document parse_document(const json& j) {
    if (!j.is_object()) fail("parse", "document must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "version" && key != "ring" && key != "sigma" && key != "payload")
            fail("parse", "unknown document key '" + key + "'");
    Document doc;
    if (!j.contains("version") || !j.at("version").is_string())
        fail("parse", "document needs a string 'version'");
    doc.version = j.at("version").get<std::string>();
    if (doc.version != "1") fail("parse", "unsupported format version '" + doc.version + "'");
    if (j.contains("ring")) doc.ring = ring_from_json(j.at("ring"));
    if (j.contains("sigma")) {
        if (!doc.ring) fail("parse", "'sigma' needs a 'ring' in the same document");
        doc.sigma = sigma_from_json(*doc.ring, j.at("sigma"));
    }
    if (j.contains("payload")) {
        const json& p = j.at("payload");
        if (!p.is_object() || p.size() != 1)
            fail("parse", "payload must hold exactly one object");
        const std::string& kind = p.items().begin().key();
        const auto& kinds = known_payload_kinds();
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
            fail("parse", "unknown payload kind '" + kind + "'");
        doc.payload_kind = kind;
        doc.payload = p.at(kind);
    }
    return doc;
}

inline Document parse_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("parse", e.what());
    }
    return parse_document(j);
}

inline json document_to_json(const Document& doc) {
    json j{{"version", doc.version}};
    if (doc.ring) j["ring"] = ring_to_json(*doc.ring);
    if (doc.sigma) j["sigma"] = sigma_to_json(*doc.sigma);
    if (!doc.payload_kind.empty()) j["payload"] = json{{doc.payload_kind, doc.payload}};
    return j;
}

} // namespace localg
