// Umbrella header.
#pragma once

#include "fraclab/config.hpp"
#include "fraclab/field.hpp"
#include "fraclab/field_io.hpp"
#include "fraclab/generators.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/inequalities.hpp"
#include "fraclab/minimizer.hpp"
#include "fraclab/nonlinearity.hpp"
#include "fraclab/rearrange.hpp"
#include "fraclab/records.hpp"
#include "fraclab/spectral.hpp"
