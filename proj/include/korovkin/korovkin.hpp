#pragma once

// Umbrella header.

#include "korovkin/expr.hpp"
#include "korovkin/fourier.hpp"
#include "korovkin/operators.hpp"
#include "korovkin/parity_poisson.hpp"
#include "korovkin/periodic.hpp"
#include "korovkin/summability.hpp"
#include "korovkin/sweep.hpp"
