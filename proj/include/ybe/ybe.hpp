#pragma once

// Umbrella header for the whole library.

#include "ybe/abelian.hpp"
#include "ybe/a2family.hpp"
#include "ybe/asymprod.hpp"
#include "ybe/brace.hpp"
#include "ybe/error.hpp"
#include "ybe/io.hpp"
#include "ybe/permutation.hpp"
#include "ybe/repro.hpp"
#include "ybe/solution.hpp"
#include "ybe/zmod.hpp"
