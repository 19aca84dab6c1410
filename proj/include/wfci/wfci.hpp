#pragma once

#include "wfci/error.hpp"
#include "wfci/exact_arith.hpp"
#include "wfci/wps.hpp"
#include "wfci/graded_poly.hpp"
#include "wfci/wci.hpp"
#include "wfci/tables.hpp"
#include "wfci/cylinder.hpp"
#include "wfci/enumerate.hpp"
#include "wfci/serialize.hpp"
