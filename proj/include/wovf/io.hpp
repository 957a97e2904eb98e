#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wovf/dilation.hpp"
#include "wovf/grouplike.hpp"

namespace wovf {

// Malformed or inconsistent JSON input.
class InputError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kFrameVersion = "wovf-frame/1";
inline constexpr const char* kWitnessVersion = "wovf-witness/1";
inline constexpr const char* kRepresentationVersion = "wovf-representation/1";

struct FrameFile {
  WeakOvf frame;
  std::optional<Tolerance> tolerance;
  std::optional<FiniteGroup> group;
  std::optional<GroupLikeSystem> grouplike;
  std::optional<std::vector<Op>> perturbation;  // B_n for the perturbation checks
  std::optional<Op> embed;                      // isometry of a dilated frame
};

// Matrices are arrays of rows, entries [re, im].
nlohmann::json op_to_json(const Op& x);
Op op_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FrameFile& file);
// Throws InputError on any structural problem; ShapeMismatch from the frame
// constructor is rethrown as InputError too.
FrameFile frame_file_from_json(const nlohmann::json& j);

std::string serialize(const FrameFile& file);
FrameFile parse_frame_file(const std::string& text);

FrameFile read_frame_file(const std::string& path);
nlohmann::json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

nlohmann::json witness_to_json(const SimilarityWitness& w);
nlohmann::json representation_to_json(const Representation& rep);
nlohmann::json representation_to_json(const GroupLikeRepresentation& rep);

}  // namespace wovf
