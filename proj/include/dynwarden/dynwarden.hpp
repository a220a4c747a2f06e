#pragma once

#include "sim_time.hpp"
#include "random.hpp"
#include "packet.hpp"
#include "channels.hpp"
#include "normalizer.hpp"
#include "warden.hpp"
#include "endpoints.hpp"
#include "simkernel.hpp"
#include "experiments.hpp"
