#pragma once

#include "approximation.hpp"
#include "census.hpp"
#include "construction.hpp"
#include "epsilon.hpp"
#include "errors.hpp"
#include "field.hpp"
#include "laurent.hpp"
#include "order.hpp"
#include "place.hpp"
#include "poly.hpp"
#include "ring.hpp"
#include "scalar.hpp"
#include "verify.hpp"
