#include "common.hpp"
#include "otk/scores.hpp"
#include "otk/synth.hpp"

namespace ot_cli {

int run_synth(const SynthOptions& opts) {
    namespace fs = std::filesystem;
    otk::synth::SynthConfig cfg;
    std::string cfg_text;
    if (!opts.config.empty()) {
        if (!fs::exists(opts.config)) return fail_usage("config file not found: " + opts.config);
        try {
            cfg_text = must_read(opts.config);
            cfg = otk::synth::SynthConfig::from_config(otk::KeyValueConfig::parse(cfg_text));
        } catch (const std::exception& e) {
            return fail_usage(e.what());
        }
    }
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);

    otk::synth::SynthCorpus corpus;
    try {
        corpus = otk::synth::generate_corpus(cfg);
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }

    otk::RunManifest manifest = otk::RunManifest::make("synth", !opts.no_timestamp);
    if (!cfg_text.empty()) manifest.config_digest = otk::digest_text(cfg_text);
    manifest.seed = cfg.seed;

    std::string corpus_text, labels_text;
    for (std::size_t i = 0; i < corpus.trajectories.size(); ++i) {
        corpus_text += otk::serialize(corpus.trajectories[i]) + "\n";
        nlohmann::json label = otk::flags_to_json(corpus.labels[i]);
        label["task_id"] = corpus.trajectories[i].task_id;
        label["model_id"] = corpus.trajectories[i].model_id;
        label["sample_index"] = corpus.trajectories[i].sample_index;
        labels_text += label.dump() + "\n";
    }
    try {
        otk::atomic_write_file(opts.output, corpus_text);
        otk::atomic_write_file(opts.output + ".manifest.json",
                               otk::to_json(manifest).dump() + "\n");
        if (!opts.labels.empty()) {
            otk::atomic_write_file(opts.labels, labels_text);
            otk::atomic_write_file(opts.labels + ".manifest.json",
                                   otk::to_json(manifest).dump() + "\n");
        }
    } catch (const std::exception& e) {
        return fail_usage(e.what());
    }
    return kExitOk;
}

}  // namespace ot_cli
