#ifndef NWGAME_NWGAME_HPP
#define NWGAME_NWGAME_HPP

#include "nwgame/analysis.hpp"
#include "nwgame/bits.hpp"
#include "nwgame/crypto.hpp"
#include "nwgame/design.hpp"
#include "nwgame/errors.hpp"
#include "nwgame/experiment.hpp"
#include "nwgame/galois.hpp"
#include "nwgame/game.hpp"
#include "nwgame/generator.hpp"
#include "nwgame/hardcore.hpp"
#include "nwgame/rational.hpp"
#include "nwgame/serialize.hpp"
#include "nwgame/strategies.hpp"

#endif  // NWGAME_NWGAME_HPP
