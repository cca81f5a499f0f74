#pragma once

#include "bridgescore/bridge.hpp"
#include "bridgescore/community.hpp"
#include "bridgescore/csv.hpp"
#include "bridgescore/edge_list.hpp"
#include "bridgescore/error.hpp"
#include "bridgescore/gexf.hpp"
#include "bridgescore/graph.hpp"
#include "bridgescore/ids.hpp"
#include "bridgescore/ingest.hpp"
#include "bridgescore/metrics.hpp"
#include "bridgescore/perturb.hpp"
#include "bridgescore/reports.hpp"
#include "bridgescore/timestamp.hpp"
