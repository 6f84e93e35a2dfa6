#pragma once

#include "paire/autoencoder.hpp"
#include "paire/embedding.hpp"
#include "paire/error.hpp"
#include "paire/features.hpp"
#include "paire/graph.hpp"
#include "paire/kmeans.hpp"
#include "paire/link_split.hpp"
#include "paire/logreg.hpp"
#include "paire/metrics.hpp"
#include "paire/pair_set.hpp"
#include "paire/report.hpp"
#include "paire/tasks.hpp"
#include "paire/translate.hpp"
#include "paire/types.hpp"
