#pragma once

#include "lowerstar/common.hpp"
#include "lowerstar/encoders.hpp"
#include "lowerstar/filtration.hpp"
#include "lowerstar/graph.hpp"
#include "lowerstar/metrics.hpp"
#include "lowerstar/persistence.hpp"
#include "lowerstar/pipeline.hpp"
#include "lowerstar/scalar_field.hpp"
#include "lowerstar/vectorize.hpp"
