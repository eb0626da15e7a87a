#pragma once

// Umbrella header: exact linear algebra, spectral routines, sequence windows,
// frame checks, representation operators, fuzz suites, and serialization.

#include "fibrep/errors.hpp"
#include "fibrep/scalar.hpp"
#include "fibrep/linalg.hpp"
#include "fibrep/jacobi.hpp"
#include "fibrep/spectral.hpp"
#include "fibrep/window.hpp"
#include "fibrep/frames.hpp"
#include "fibrep/fib_operator.hpp"
#include "fibrep/suite.hpp"
#include "fibrep/report.hpp"
