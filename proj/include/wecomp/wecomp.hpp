#pragma once

#include "wecomp/amplify.hpp"
#include "wecomp/circuits.hpp"
#include "wecomp/codes.hpp"
#include "wecomp/cyclotomic.hpp"
#include "wecomp/errors.hpp"
#include "wecomp/gapred.hpp"
#include "wecomp/gf2.hpp"
#include "wecomp/pathsum.hpp"
#include "wecomp/phase_poly.hpp"
#include "wecomp/real.hpp"
#include "wecomp/util.hpp"
