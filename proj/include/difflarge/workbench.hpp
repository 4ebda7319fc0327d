#pragma once

#include "difflarge/extension.hpp"
#include "difflarge/series.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace difflarge {

using Json = nlohmann::ordered_json;

struct WorkbenchConfig {
    BaseFieldPtr base = BaseFieldSpec::rationals();
    long prec = 16;
    unsigned search_bound = 8;
    unsigned factor_degree_bound = kDefaultFactorDegreeBound;
    unsigned derivative_cap = kDefaultDerivativeCap;
};

// {"generators":[...],"derivations":{"u":"1"},"prec":16,...}; every key is
// optional. Throws InvalidArgument or a parse error.
WorkbenchConfig parse_config(const Json& j, const WorkbenchConfig& defaults = {});
WorkbenchConfig load_config(const std::string& path);

Json series_json(const TruncSeries& s);
Json jet_json(const Jet& jet, const BaseFieldSpec& base);

// Runs every record of a JSON-lines problem file (validate, extension
// solution, Taylor series, oracle cross-check, invariants). Rows follow
// input order whatever `jobs` is.
Json corpus_run(const std::string& path, const WorkbenchConfig& cfg, unsigned jobs = 1);

// Command-line entry point; args excludes the program name. JSON goes to
// `out`, the return value is the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out);

} // namespace difflarge
