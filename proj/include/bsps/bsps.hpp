#pragma once

#include "bsps/classify.hpp"
#include "bsps/corpus.hpp"
#include "bsps/engine.hpp"
#include "bsps/error.hpp"
#include "bsps/lexicon.hpp"
#include "bsps/metrics.hpp"
#include "bsps/pipeline.hpp"
#include "bsps/textproc.hpp"
#include "bsps/unicode.hpp"
#include "bsps/version.hpp"
