#pragma once

#include "cdna/analysis.hpp"
#include "cdna/channels.hpp"
#include "cdna/codes.hpp"
#include "cdna/core.hpp"
#include "cdna/graph.hpp"
#include "cdna/random.hpp"
#include "cdna/report.hpp"
#include "cdna/text_io.hpp"
