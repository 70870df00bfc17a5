#pragma once

#include "zmc/rational.hpp"
#include "zmc/poly.hpp"
#include "zmc/lorentz.hpp"
#include "zmc/series.hpp"
#include "zmc/bounds.hpp"
#include "zmc/catalog.hpp"
#include "zmc/grid.hpp"
#include "zmc/io.hpp"
