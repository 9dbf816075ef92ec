#pragma once

#include "photonent/errors.hpp"
#include "photonent/grid.hpp"
#include "photonent/numerics.hpp"
#include "photonent/schmidt.hpp"
#include "photonent/fockspace.hpp"
#include "photonent/wavepacket.hpp"
#include "photonent/pairsource.hpp"
#include "photonent/splitter.hpp"
#include "photonent/reference.hpp"
#include "photonent/figures.hpp"
