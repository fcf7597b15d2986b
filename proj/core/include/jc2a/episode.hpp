#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "jc2a/rng.hpp"
#include "jc2a/tensor.hpp"

namespace jc2a {

// One labeled support exemplar: features [C x H x W] plus binary mask [H x W].
struct SupportPair {
    Tensor features;
    Tensor mask;
};

// A K-shot segmentation task: K support pairs, query features and its
// ground-truth mask, all sharing C, H, W.
struct EpisodeTask {
    std::vector<SupportPair> supports;
    Tensor query_features;
    Tensor query_gt;
    int class_id = 0;
    bool has_latent = false;
    int latent_class = -1;
};

// Synthetic episode source. Class c is embedded as a one-hot bump on channel
// c, so valid class ids are 0..channels-1; ids below num_base_classes are the
// base ("seen") classes, the rest are held out. The invariant
// channels >= num_base_classes + 1 keeps at least one held-out class
// available.
struct SyntheticConfig {
    std::size_t channels = 16;
    std::size_t height = 32;
    std::size_t width = 32;
    std::size_t shot = 1;
    std::size_t num_base_classes = 4;
    float noise_sigma = 0.05f;
    float latent_object_rate = 0.0f;
    std::uint64_t seed = 0;
};

void validate(const SyntheticConfig& cfg);

// Deterministic generation procedure, fixed so an independent implementation
// can reproduce it from the same Rng stream:
//
//   rng = Rng(cfg.seed)
//   1. per support i = 0..K-1: rect draws h, w, y, x
//      (h in [ceil(H/4), floor(H/2)], w likewise over W, then y in
//       [0, H-h], x in [0, W-w]; four next_int calls in that order)
//   2. query rect draws h, w, y, x
//   3. latent coin: next_double() < latent_object_rate (always consumed)
//      if latent: latent class = pool[next_int(0, |pool|-1)], then rect
//      draws h, w, y, x. Pool = base classes minus the episode class, or
//      all other classes when that set is empty.
//   4. support features, i = 0..K-1: for c, y, x in row-major order,
//      value = noise_sigma * next_normal() (+1 on the object's class channel)
//   5. query features in the same order (+1 on latent channel inside the
//      latent rect; query_gt covers only the episode-class rect)
//
// Draws happen for every pixel regardless of noise_sigma, so streams do not
// shift between noise levels.
EpisodeTask generate_episode(const SyntheticConfig& cfg, int class_id);

// Rectangle draw shared by episode generation and bank instances.
struct ObjectRect {
    std::size_t y0, x0, h, w;
    bool contains(std::size_t y, std::size_t x) const {
        return y >= y0 && y < y0 + h && x >= x0 && x < x0 + w;
    }
};
ObjectRect draw_rect(Rng& rng, std::size_t height, std::size_t width);

// Single labeled instance (support-style) of a given class; used to build
// prototype banks. Consumes: one rect draw, then C*H*W normal draws.
SupportPair generate_instance(Rng& rng, std::size_t channels, std::size_t height,
                              std::size_t width, float noise_sigma, int class_id);

// Episode directory layout:
//   manifest.json, support_<i>_feat.jcat, support_<i>_mask.jcat,
//   query_feat.jcat, query_gt.jcat
void save_episode(const EpisodeTask& episode, const std::filesystem::path& dir);
EpisodeTask load_episode(const std::filesystem::path& dir);

}  // namespace jc2a
