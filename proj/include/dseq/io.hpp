#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "dseq/config.hpp"
#include "dseq/convergence.hpp"
#include "dseq/duality.hpp"
#include "dseq/matclass.hpp"
#include "dseq/matrix.hpp"
#include "dseq/seqcore.hpp"
#include "dseq/spaces.hpp"

namespace dseq::io {

using Json = nlohmann::json;
/// Output documents keep insertion order.
using OJson = nlohmann::ordered_json;

/// {"kind":"closed_form","name":...,"params":{...}}
/// {"kind":"table","values":[[...]],"default":0}
/// {"kind":"combinator","op":...,"params":{...},"children":[...]}
DoubleSequence sequence_from_json(const Json& j);
OJson sequence_to_json(const DoubleSequence& x);

/// {"kind":"builtin","name":...,"params":{...}}
/// {"kind":"entries","entries":[[m,n,k,l,v],...]}
/// {"kind":"b_matrix","a":<sequence>,"window":[M,N]}
/// {"kind":"e_to_f","of":<matrix>}
/// {"kind":"tail_sum","of":<matrix>,"window":[M,N]}
FourDimMatrix matrix_from_json(const Json& j);
OJson matrix_to_json(const FourDimMatrix& a);

/// Overrides fields of `base` with the keys present in `j`: tol,
/// growth_factor, fringe, schedule, matrix_schedule, prefix_P, cell_cap,
/// bound_slack. Unknown keys are rejected.
RunConfig config_from_json(const Json& j, RunConfig base = {});
OJson config_to_json(const RunConfig& cfg);

/// Parses text as JSON; throws InvalidArgument with the parser message.
Json parse(std::string_view text, std::string_view what);
/// Text of "@path" arguments is read from the file, anything else is taken verbatim.
std::string read_argument(const std::string& arg);

OJson to_json(const Window& w);
OJson to_json(const ConvergenceReport& r);
OJson to_json(const MembershipVerdict& v);
OJson to_json(const DualConditionReport& r);
OJson to_json(const ConditionReport& r);
OJson to_json(const BatteryReport& r);

/// Table values; integers on the exact path.
OJson table_json(const DoubleSequence& x, const Window& w, std::uint64_t cell_cap);

}  // namespace dseq::io
