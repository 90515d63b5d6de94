#pragma once

#include "rhg/core.hpp"
#include "rhg/experiments.hpp"
#include "rhg/generator.hpp"
#include "rhg/geometry.hpp"
#include "rhg/io.hpp"
#include "rhg/limits.hpp"
#include "rhg/measure.hpp"
#include "rhg/quadrature.hpp"
#include "rhg/rng.hpp"
