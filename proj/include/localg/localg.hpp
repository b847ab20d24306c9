#pragma once

#include "localg/complex.hpp"
#include "localg/document.hpp"
#include "localg/error.hpp"
#include "localg/fraction.hpp"
#include "localg/lift.hpp"
#include "localg/linalg.hpp"
#include "localg/ltheory.hpp"
#include "localg/matrix.hpp"
#include "localg/modules.hpp"
#include "localg/rings.hpp"
#include "localg/series.hpp"
#include "localg/sigma.hpp"
#include "localg/snf.hpp"
#include "localg/triple.hpp"
