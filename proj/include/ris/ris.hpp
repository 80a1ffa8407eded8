// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "ris/core.hpp"
#include "ris/em_core.hpp"
#include "ris/linalg.hpp"
#include "ris/scattering.hpp"
#include "ris/channel.hpp"
#include "ris/single_element.hpp"
#include "ris/optimizer.hpp"
#include "ris/experiments.hpp"
#include "ris/io.hpp"
