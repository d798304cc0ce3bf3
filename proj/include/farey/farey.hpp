#pragma once

#include "farey/core.hpp"
#include "farey/ferro.hpp"
#include "farey/report.hpp"
#include "farey/spectral.hpp"
#include "farey/verify.hpp"
#include "farey/zeta.hpp"
