#pragma once

#include "mlegendre/bigfloat.hpp"
#include "mlegendre/divisor.hpp"
#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"
#include "mlegendre/legendre.hpp"
#include "mlegendre/measure.hpp"
#include "mlegendre/parallel.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/polynomial.hpp"
#include "mlegendre/serialize.hpp"
#include "mlegendre/series.hpp"
#include "mlegendre/spectral.hpp"
#include "mlegendre/sturm.hpp"
#include "mlegendre/verify.hpp"
