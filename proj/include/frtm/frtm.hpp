#ifndef FRTM_FRTM_HPP
#define FRTM_FRTM_HPP

#include "frtm/errors.hpp"
#include "frtm/functionals.hpp"
#include "frtm/gagliardo.hpp"
#include "frtm/grid.hpp"
#include "frtm/moser.hpp"
#include "frtm/optimize.hpp"
#include "frtm/rearrangement.hpp"
#include "frtm/spectral.hpp"

#endif
