#pragma once

#include "arrmono/errors.hpp"
#include "arrmono/rational.hpp"
#include "arrmono/cyclotomic.hpp"
#include "arrmono/laurent.hpp"
#include "arrmono/point.hpp"
#include "arrmono/matrix.hpp"
#include "arrmono/arrangement.hpp"
#include "arrmono/free_group.hpp"
#include "arrmono/monodromy.hpp"
#include "arrmono/charvar.hpp"
#include "arrmono/polygon.hpp"
#include "arrmono/serialize.hpp"
#include "arrmono/random.hpp"
#include "arrmono/parallel.hpp"
#include "arrmono/reproduce.hpp"
