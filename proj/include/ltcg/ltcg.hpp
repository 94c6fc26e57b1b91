#pragma once

#include "ltcg/error.hpp"
#include "ltcg/numeric.hpp"
#include "ltcg/f2.hpp"
#include "ltcg/codes.hpp"
#include "ltcg/lp.hpp"
#include "ltcg/symmetry.hpp"
#include "ltcg/testers.hpp"
#include "ltcg/cayley.hpp"
#include "ltcg/spectrum.hpp"
#include "ltcg/embed.hpp"
#include "ltcg/io.hpp"
#include "ltcg/corpus.hpp"
