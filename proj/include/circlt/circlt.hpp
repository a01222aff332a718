#pragma once

#include "circlt/circulant.hpp"
#include "circlt/clt_harness.hpp"
#include "circlt/combinatorics.hpp"
#include "circlt/config.hpp"
#include "circlt/ensembles.hpp"
#include "circlt/error.hpp"
#include "circlt/parallel.hpp"
#include "circlt/polynomial.hpp"
#include "circlt/report.hpp"
#include "circlt/statistics.hpp"
#include "circlt/version.hpp"
