#pragma once

#include "drwavelet/ensemble.hpp"
#include "drwavelet/errors.hpp"
#include "drwavelet/filters.hpp"
#include "drwavelet/grid.hpp"
#include "drwavelet/io.hpp"
#include "drwavelet/projections.hpp"
#include "drwavelet/render.hpp"
#include "drwavelet/solver.hpp"
