#pragma once

#include "rational.hpp"
#include "interval_union.hpp"
#include "spaces.hpp"
#include "referee.hpp"
#include "certificates.hpp"
#include "strategies.hpp"
#include "refinement.hpp"
#include "registry.hpp"
#include "serialization.hpp"
