#pragma once

#include "disjoint/field.hpp"
#include "disjoint/integer.hpp"
#include "disjoint/matrix.hpp"
#include "disjoint/matrix_io.hpp"
#include "disjoint/rota.hpp"
#include "disjoint/rota_io.hpp"
#include "disjoint/smith.hpp"
#include "disjoint/spectrum.hpp"
#include "disjoint/transversals.hpp"
