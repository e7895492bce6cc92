#pragma once

#include "inkbasis/errors.hpp"
#include "inkbasis/poly.hpp"
#include "inkbasis/moments.hpp"
#include "inkbasis/piecewise.hpp"
#include "inkbasis/sobolev.hpp"
#include "inkbasis/trace.hpp"
#include "inkbasis/inkml.hpp"
#include "inkbasis/normalize.hpp"
#include "inkbasis/symbol.hpp"
#include "inkbasis/classify.hpp"
