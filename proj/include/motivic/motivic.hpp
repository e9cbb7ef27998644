#ifndef MOTIVIC_MOTIVIC_HPP
#define MOTIVIC_MOTIVIC_HPP

#include <motivic/errors.hpp>
#include <motivic/io.hpp>
#include <motivic/laurent_poly.hpp>
#include <motivic/multi_series.hpp>
#include <motivic/pairs.hpp>
#include <motivic/powerstruct.hpp>
#include <motivic/rational_func.hpp>
#include <motivic/reference.hpp>
#include <motivic/solver/eq1.hpp>
#include <motivic/solver/fab.hpp>
#include <motivic/solver/gtable.hpp>
#include <motivic/solver/system6.hpp>
#include <motivic/tseries.hpp>
#include <motivic/tuples.hpp>
#include <motivic/verify.hpp>

#endif
