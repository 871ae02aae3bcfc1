#pragma once

#include "pdmseries/eigensolver.hpp"
#include "pdmseries/errors.hpp"
#include "pdmseries/mass_expansion.hpp"
#include "pdmseries/model.hpp"
#include "pdmseries/oracle.hpp"
#include "pdmseries/recurrence.hpp"
#include "pdmseries/series.hpp"
#include "pdmseries/wavefunction.hpp"
