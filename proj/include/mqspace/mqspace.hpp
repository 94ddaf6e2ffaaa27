#pragma once

#include "mqspace/amplitudes.hpp"
#include "mqspace/base_operator.hpp"
#include "mqspace/cascade.hpp"
#include "mqspace/coherence.hpp"
#include "mqspace/diffusion.hpp"
#include "mqspace/encodings.hpp"
#include "mqspace/error.hpp"
#include "mqspace/expansion.hpp"
#include "mqspace/hamiltonian.hpp"
#include "mqspace/operator.hpp"
#include "mqspace/propagator.hpp"
#include "mqspace/properties.hpp"
#include "mqspace/random.hpp"
#include "mqspace/spin_system.hpp"
#include "mqspace/subspaces.hpp"
