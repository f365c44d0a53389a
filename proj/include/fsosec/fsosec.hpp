#pragma once

#include "fsosec/units.hpp"
#include "fsosec/link_physics.hpp"
#include "fsosec/secrecy.hpp"
#include "fsosec/scenario.hpp"
#include "fsosec/sweep.hpp"
#include "fsosec/assessment.hpp"
#include "fsosec/io.hpp"
#include "fsosec/registry.hpp"
