#pragma once

#include "qeit/coherence.hpp"
#include "qeit/dark_state.hpp"
#include "qeit/fock.hpp"
#include "qeit/group_velocity.hpp"
#include "qeit/params.hpp"
#include "qeit/phase.hpp"
#include "qeit/susceptibility.hpp"
#include "qeit/version.hpp"
