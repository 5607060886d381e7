#pragma once

// Recurrence quantification analysis for daily market series: embedding
// diagnostics, recurrence plots, the measure suite, windowed and rolling
// evaluation, regime segmentation, and the file formats around them.

#include "rqa/csv.hpp"
#include "rqa/date.hpp"
#include "rqa/embedding.hpp"
#include "rqa/errors.hpp"
#include "rqa/log.hpp"
#include "rqa/measures.hpp"
#include "rqa/monitor.hpp"
#include "rqa/recurrence.hpp"
#include "rqa/render.hpp"
#include "rqa/report_json.hpp"
#include "rqa/segmentation.hpp"
#include "rqa/series.hpp"
#include "rqa/windowed.hpp"
