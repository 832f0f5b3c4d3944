#pragma once

#include "trifield/core.hpp"
#include "trifield/carrier.hpp"
#include "trifield/ring.hpp"
#include "trifield/iso.hpp"
#include "trifield/envelope.hpp"
#include "trifield/dyadic.hpp"
#include "trifield/polynomial.hpp"
#include "trifield/poly_fields.hpp"
#include "trifield/automorphisms.hpp"
#include "trifield/structures.hpp"
#include "trifield/serialize.hpp"
#include "trifield/field_spec.hpp"
#include "trifield/paper_suite.hpp"
