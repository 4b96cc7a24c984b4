#pragma once

// Umbrella header.

#include "uastl/bench.hpp"
#include "uastl/core.hpp"
#include "uastl/encode/build.hpp"
#include "uastl/encode/ir.hpp"
#include "uastl/encode/smtlib.hpp"
#include "uastl/formula.hpp"
#include "uastl/gen.hpp"
#include "uastl/infer/decision_tree.hpp"
#include "uastl/infer/inference.hpp"
#include "uastl/infer/sampling.hpp"
#include "uastl/io/dataset_io.hpp"
#include "uastl/objective.hpp"
#include "uastl/parse.hpp"
#include "uastl/piecewise.hpp"
#include "uastl/semantics.hpp"
#include "uastl/solve/backend.hpp"
#include "uastl/solve/external.hpp"
#include "uastl/solve/internal.hpp"
