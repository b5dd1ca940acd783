#pragma once

#include "qseries/appell.hpp"
#include "qseries/catalog.hpp"
#include "qseries/closed_forms.hpp"
#include "qseries/errors.hpp"
#include "qseries/eulerian.hpp"
#include "qseries/expr.hpp"
#include "qseries/hecke.hpp"
#include "qseries/monomial.hpp"
#include "qseries/rational.hpp"
#include "qseries/series.hpp"
#include "qseries/theta.hpp"
