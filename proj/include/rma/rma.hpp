#pragma once

// Everything: exact arithmetic, maps, annihilators, real-root counting, the
// Pinchuk bundle, normal-form reductions, and serialization.

#include "rma/annihilator.hpp"
#include "rma/builtins.hpp"
#include "rma/errors.hpp"
#include "rma/gcd.hpp"
#include "rma/json_io.hpp"
#include "rma/monomial.hpp"
#include "rma/mpoly.hpp"
#include "rma/pinchuk.hpp"
#include "rma/points.hpp"
#include "rma/positivity.hpp"
#include "rma/prng.hpp"
#include "rma/quadext.hpp"
#include "rma/ratfunc.hpp"
#include "rma/rational.hpp"
#include "rma/realroots.hpp"
#include "rma/reductions.hpp"
#include "rma/resultant.hpp"
#include "rma/rmap.hpp"
#include "rma/sturm.hpp"
#include "rma/upoly.hpp"
