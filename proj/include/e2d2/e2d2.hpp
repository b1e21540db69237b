#pragma once

// Umbrella header.

#include "e2d2/dataset.hpp"
#include "e2d2/discriminant.hpp"
#include "e2d2/ehr.hpp"
#include "e2d2/error_theory.hpp"
#include "e2d2/errors.hpp"
#include "e2d2/estimators.hpp"
#include "e2d2/eval.hpp"
#include "e2d2/glasso.hpp"
#include "e2d2/io.hpp"
#include "e2d2/matrix.hpp"
#include "e2d2/synth.hpp"
