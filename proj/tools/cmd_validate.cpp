#include "common.hpp"
#include "otk/trajectory.hpp"

namespace ot_cli {

int run_validate(const ValidateOptions& opts) {
    namespace fs = std::filesystem;
    if (!fs::exists(opts.input)) return fail_usage("input file not found: " + opts.input);

    auto parsed = otk::parse_corpus_text(must_read(opts.input));
    for (const auto& d : parsed.line_diagnostics) {
        std::cerr << opts.input << ":" << d.line << ": " << d.reason << "\n";
    }
    for (const auto& e : parsed.corpus_errors) {
        std::cerr << opts.input << ": " << e << "\n";
    }
    std::cout << "valid=" << parsed.trajectories.size()
              << " invalid=" << parsed.line_diagnostics.size()
              << " corpus_errors=" << parsed.corpus_errors.size() << "\n";
    return parsed.clean() ? kExitOk : kExitPartial;
}

}  // namespace ot_cli
