#pragma once

#include "biortho/emission.hpp"
#include "biortho/errors.hpp"
#include "biortho/grid.hpp"
#include "biortho/kg.hpp"
#include "biortho/lorentz.hpp"
#include "biortho/photon.hpp"
#include "biortho/random.hpp"
#include "biortho/serialize.hpp"
#include "biortho/spectral.hpp"
#include "biortho/states.hpp"
#include "biortho/types.hpp"
