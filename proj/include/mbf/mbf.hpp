#pragma once

#include "mbf/truth_table.hpp"
#include "mbf/poset.hpp"
#include "mbf/incidence.hpp"
#include "mbf/intervals.hpp"
#include "mbf/symmetry.hpp"
#include "mbf/sweep.hpp"
#include "mbf/wide.hpp"
