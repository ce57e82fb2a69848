#pragma once

#include "rns/bigint.hpp"
#include "rns/decoder.hpp"
#include "rns/error.hpp"
#include "rns/expression.hpp"
#include "rns/moduli.hpp"
#include "rns/reconstruct.hpp"
#include "rns/rns_int.hpp"
#include "rns/signal.hpp"
#include "rns/word.hpp"
#include "rns/sampling.hpp"
