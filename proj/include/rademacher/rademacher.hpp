#pragma once

#include "rademacher/blocks.hpp"
#include "rademacher/bounds.hpp"
#include "rademacher/dist.hpp"
#include "rademacher/exact.hpp"
#include "rademacher/figure.hpp"
#include "rademacher/verify.hpp"
