#pragma once

#include "common.hpp"
#include "su_basis.hpp"
#include "coherence.hpp"
#include "invariants.hpp"
#include "positivity.hpp"
#include "composite.hpp"
#include "entanglement.hpp"
