#pragma once

#include "serrewt/artin_hasse.hpp"
#include "serrewt/cohomology.hpp"
#include "serrewt/error.hpp"
#include "serrewt/finite_field.hpp"
#include "serrewt/integer.hpp"
#include "serrewt/laurent.hpp"
#include "serrewt/serre_basis.hpp"
#include "serrewt/series_oracle.hpp"
#include "serrewt/tame_chars.hpp"
#include "serrewt/verify.hpp"
#include "serrewt/weight_lattice.hpp"
