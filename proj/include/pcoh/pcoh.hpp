#pragma once

// Umbrella header: the whole engine.

#include "pcoh/engine.hpp"
#include "pcoh/io.hpp"
#include "pcoh/verify.hpp"
