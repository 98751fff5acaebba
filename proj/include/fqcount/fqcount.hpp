#pragma once

#include "fqcount/bounds.hpp"
#include "fqcount/codes.hpp"
#include "fqcount/errors.hpp"
#include "fqcount/gf.hpp"
#include "fqcount/intmath.hpp"
#include "fqcount/poly.hpp"
#include "fqcount/projgeom.hpp"
#include "fqcount/varieties.hpp"
