#pragma once

#include "rprim/arith.hpp"
#include "rprim/chars.hpp"
#include "rprim/ff.hpp"
#include "rprim/rstruct.hpp"
#include "rprim/search.hpp"
