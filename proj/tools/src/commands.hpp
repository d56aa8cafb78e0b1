#pragma once

#include "params.hpp"

#include "confnet/geometry.hpp"
#include "confnet/linkmodels.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace confnet::cli {

struct CommandOutput {
    std::string text;
    int exit_code = 0;
};

struct Command {
    std::string name;
    std::string help;
    std::vector<OptionSpec> options;
    std::function<CommandOutput(const Params&)> run;
};

/// mass, pfc, simulate, field, validate; every command also carries the
/// shared format/seed/threads options.
const std::vector<Command>& commands();

/// Link model from --model/--m/--n/--beta/--eta/--d/--radius with diversity
/// `k` (m for SIMO/MISO, n for MIMO; ignored otherwise).
ConnectionModel model_from(const Params& p, int k, double beta, double eta, int d);

/// --prism-file (JSON {"base": [[x, y], ...], "height": h}) or --prism preset
/// scaled by --L.
RightPrism prism_from(const Params& p);

/// Inverse of the prism-file reader.
nlohmann::json prism_to_json(const RightPrism& prism);
RightPrism prism_from_json(const nlohmann::json& j);

}  // namespace confnet::cli
