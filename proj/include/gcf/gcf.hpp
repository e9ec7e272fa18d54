#ifndef GCF_GCF_HPP
#define GCF_GCF_HPP

#include "gcf/bayes_net.hpp"
#include "gcf/dataset.hpp"
#include "gcf/error.hpp"
#include "gcf/graph.hpp"
#include "gcf/io_json.hpp"
#include "gcf/pd_graph.hpp"
#include "gcf/pipeline.hpp"
#include "gcf/prob_table.hpp"
#include "gcf/report.hpp"
#include "gcf/rng.hpp"
#include "gcf/schema.hpp"
#include "gcf/scoring.hpp"

#endif  // GCF_GCF_HPP
