#pragma once

#include "projective.hpp"
#include "eigen4.hpp"
#include "stereohomology.hpp"
#include "rotation.hpp"
#include "classify.hpp"
#include "io.hpp"
