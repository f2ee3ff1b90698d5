#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "fgiqa/cli/batch.hpp"
#include "fgiqa/evaluation.hpp"
#include "json.hpp"

namespace fgiqa::cli {

// Scores CSV: ref,dist,group,bitrate,q,e_g,std_g,e_t,std_t,psnr_db[,gt].
// Row failures follow as '#'-prefixed lines.
void write_scores_csv(std::ostream& out, const BatchResult& result);
void write_scores_json(std::ostream& out, const BatchResult& result);
std::vector<ScoreRecord> read_scores_csv(std::istream& in);

nlohmann::json score_to_json(const ScoreRecord& rec);

// bitrate_id,n_groups,n_excluded,srcc,krcc,plcc with a closing "average" row.
// Undefined coefficients are written as "undefined" (JSON: null).
void write_report_csv(std::ostream& out, const CorrelationReport& report);
nlohmann::json report_to_json(const CorrelationReport& report);
CorrelationReport read_report_csv(std::istream& in);

}  // namespace fgiqa::cli
