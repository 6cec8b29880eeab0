#pragma once

#include "parkfn/counting.hpp"
#include "parkfn/enumerate.hpp"
#include "parkfn/errors.hpp"
#include "parkfn/forest.hpp"
#include "parkfn/knuth.hpp"
#include "parkfn/laws.hpp"
#include "parkfn/montecarlo.hpp"
#include "parkfn/numeric.hpp"
#include "parkfn/parking_function.hpp"
#include "parkfn/polynomial.hpp"
#include "parkfn/random.hpp"
#include "parkfn/report.hpp"
#include "parkfn/shuffle.hpp"
#include "parkfn/stats.hpp"
#include "parkfn/tutte.hpp"
#include "parkfn/verify.hpp"
