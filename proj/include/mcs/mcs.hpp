#pragma once

// Umbrella header for the MCS splitting-scheme library.

#include "mcs/amplification.hpp"
#include "mcs/analysis.hpp"
#include "mcs/convergence.hpp"
#include "mcs/counter_rng.hpp"
#include "mcs/csv_io.hpp"
#include "mcs/cyclic_tridiagonal.hpp"
#include "mcs/grid_field.hpp"
#include "mcs/parallel.hpp"
#include "mcs/problem_config.hpp"
#include "mcs/solver.hpp"
#include "mcs/spectrum.hpp"
#include "mcs/stability.hpp"
#include "mcs/types.hpp"
