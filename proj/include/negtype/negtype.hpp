#ifndef NEGTYPE_NEGTYPE_HPP
#define NEGTYPE_NEGTYPE_HPP

#include "negtype/bounds.hpp"
#include "negtype/checker.hpp"
#include "negtype/error.hpp"
#include "negtype/io.hpp"
#include "negtype/jacobi.hpp"
#include "negtype/matrix.hpp"
#include "negtype/serialize.hpp"
#include "negtype/simplex.hpp"
#include "negtype/simplex_gap.hpp"
#include "negtype/space.hpp"
#include "negtype/tolerance.hpp"

#endif  // NEGTYPE_NEGTYPE_HPP
