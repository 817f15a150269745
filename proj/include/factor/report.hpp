#pragma once

// JSON rendering of analysis results.  Every report is deterministic for a
// fixed input and flag set; timing lives only in the CLI envelope under the
// "timing" key so consumers can strip it before comparing runs.

#include <string>

#include "json.hpp"

#include "factor/bridges.hpp"
#include "factor/class_closing.hpp"
#include "factor/class_degree.hpp"
#include "factor/ctc.hpp"
#include "factor/presentation.hpp"
#include "factor/subset_sink.hpp"

namespace factor {

using Json = nlohmann::ordered_json;

// 64-bit FNV-1a of the raw input text, as 16 hex digits.
std::string input_digest(const std::string& text);

// Finite depth/count values render as numbers, kDepthInfinite as "infinite".
Json depth_value(int value);

Json word_json(const Presentation& p, const Word& w);
Json path_json(const Presentation& p, const Path& path);
Json vset_json(const Presentation& p, VSet s);
Json eset_json(const Presentation& p, ESet s);
Json lasso_json(const Presentation& p, const Lasso& x);

Json presentation_report(const Presentation& p);
Json depth_report(const Presentation& p, const DepthResult& r);
Json t_depth_report(const Presentation& p, const TangledPartitionResult& r);
Json degree_report(const Presentation& p, const DegreeResult& r);
Json finite_to_one_report(const Presentation& p, const FiniteToOneResult& r);
Json class_degree_report(const Presentation& p, const ClassDegreeResult& r);
Json class_count_bounds_report(const Presentation& p,
                               const ClassCountBounds& r);
Json closing_report(const Presentation& p, const ClosingVerdict& v);
Json cover_report(const Presentation& p, const SubsetCover& c);
Json aft_report(const Presentation& p, const AftWitness& w);

// `instantiate` = number of witness family members spelled out (k = 0..n-1).
Json sft_report(const Presentation& p, const SftResult& r, int instantiate);
Json continuing_report(const Presentation& p, const ContinuingResult& r);
Json ctc_report(const CtcVerdict& v);
Json shell_report(const Presentation& p, const MultiplicityShell& s);
Json implication_suite_report(const ImplicationReport& r);

}  // namespace factor
