#pragma once

#include "bundles.hpp"
#include "crystal.hpp"
#include "demazure.hpp"
#include "errors.hpp"
#include "path.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "rootsys.hpp"
#include "stringpoly.hpp"
#include "twistedcube.hpp"
