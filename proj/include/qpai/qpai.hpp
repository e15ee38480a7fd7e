#pragma once

// Umbrella header.

#include "qpai/alphabet.hpp"
#include "qpai/bench.hpp"
#include "qpai/dataset.hpp"
#include "qpai/dfa.hpp"
#include "qpai/extract.hpp"
#include "qpai/learner.hpp"
#include "qpai/qtable.hpp"
#include "qpai/random.hpp"
#include "qpai/rpni.hpp"
#include "qpai/sample.hpp"
#include "qpai/tomita.hpp"
