#pragma once

#include "snc/exactalg/cyclotomic.hpp"
#include "snc/exactalg/graded_poly.hpp"
#include "snc/exactalg/rat.hpp"
#include "snc/exactalg/ratfunc.hpp"
#include "snc/invariants.hpp"
#include "snc/motivic.hpp"
#include "snc/pairs/snc_pair.hpp"
#include "snc/tau_ledger.hpp"
