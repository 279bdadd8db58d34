#pragma once

#include "fneq/error.hpp"
#include "fneq/expr.hpp"
#include "fneq/factor.hpp"
#include "fneq/finite_field.hpp"
#include "fneq/gassmann.hpp"
#include "fneq/pair_file.hpp"
#include "fneq/poly.hpp"
#include "fneq/splitting.hpp"
#include "fneq/twisted.hpp"
