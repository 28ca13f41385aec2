#pragma once

#include "gmprime/arith.hpp"
#include "gmprime/errors.hpp"
#include "gmprime/factorization.hpp"
#include "gmprime/gap_stats.hpp"
#include "gmprime/gm_filter.hpp"
#include "gmprime/prime_search.hpp"
#include "gmprime/primality.hpp"
