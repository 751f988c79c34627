#pragma once

#include "ept/decompose.hpp"
#include "ept/ensemble.hpp"
#include "ept/io.hpp"
#include "ept/maps.hpp"
#include "ept/patch.hpp"
#include "ept/select.hpp"
#include "ept/siggen.hpp"
#include "ept/signal.hpp"
