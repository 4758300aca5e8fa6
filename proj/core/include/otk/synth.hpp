#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otk/config.hpp"
#include "otk/patterns.hpp"
#include "otk/trajectory.hpp"

namespace otk::synth {

struct SynthConfig {
    int n_tasks = 10;
    int samples_per_task = 1;
    double p_paralysis = 0.0;
    double p_rogue = 0.0;
    double p_premature = 0.0;
    double base_success_rate = 0.6;
    double success_penalty_per_pattern = 0.2;
    int mean_steps = 6;
    std::uint64_t seed = 0;
    std::string model_id = "synth-model-a";

    void check() const;
    static SynthConfig from_config(const KeyValueConfig& cfg);
};

struct SynthCorpus {
    std::vector<Trajectory> trajectories;
    std::vector<patterns::PatternFlags> labels;  // ground truth, parallel to trajectories
};

/// Deterministic labeled corpus. Each trajectory is independently injected
/// with each manifestation at its configured probability; the injected
/// blocks follow fixed templates that the pattern detectors recognize by
/// construction, so `labels` is exact ground truth. Success probability is
/// base_success_rate minus a penalty per injected pattern, clamped to [0,1].
SynthCorpus generate_corpus(const SynthConfig& cfg);

}  // namespace otk::synth
