#pragma once

#include "hyperseries/core.hpp"
#include "hyperseries/identities.hpp"
#include "hyperseries/oracle.hpp"
#include "hyperseries/orr_sommerfeld.hpp"
#include "hyperseries/series_integrals.hpp"
#include "hyperseries/special_functions.hpp"
#include "hyperseries/transforms.hpp"
