#pragma once

#include "error.hpp"
#include "unicode.hpp"
#include "format.hpp"
#include "ingest.hpp"
#include "betweenness.hpp"
#include "network.hpp"
#include "lexicon.hpp"
#include "textmetrics.hpp"
#include "features.hpp"
#include "stats.hpp"
#include "histdiff.hpp"
#include "config.hpp"
#include "pipeline.hpp"
