#pragma once

// JSON encodings of every value that crosses a file boundary. Decoding errors
// are reported as ParseError; syntax errors carry the line and column.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "sunflower/algcore.hpp"
#include "sunflower/bounds.hpp"
#include "sunflower/flora.hpp"
#include "sunflower/setcore.hpp"
#include "sunflower/sfsearch.hpp"

namespace sunflower::io {

using Json = nlohmann::json;

/// Parses text as JSON; `source` names the input in error messages.
[[nodiscard]] Json parse(const std::string& text, const std::string& source = "input");
[[nodiscard]] Json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const Json& value);

// {"universe": <int optional>, "sets": [[int,...],...]}
[[nodiscard]] Json encode(const SetFamily& family);
[[nodiscard]] SetFamily decode_family(const Json& j);

// {"core": [int,...], "members": [int,...]}, members being indices into the family
[[nodiscard]] Json encode(const SunflowerWitness& witness);
[[nodiscard]] SunflowerWitness decode_witness(const Json& j);

struct SfCertificate {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t value = 0;
    std::vector<FiniteSet> extremal;
    bool exact = false;

    friend bool operator==(const SfCertificate&, const SfCertificate&) = default;
};

[[nodiscard]] SfCertificate make_certificate(std::size_t n, std::size_t k, const SfAnswer& answer);
// {"n":..,"k":..,"value":..,"extremal":[[..]],"status":"exact"|"bound"}
[[nodiscard]] Json encode(const SfCertificate& cert);
[[nodiscard]] SfCertificate decode_sf_certificate(const Json& j);

// {"signature":[{"name":"s","arity":1},...],"size":N,"tables":{"s":[..],"a":[[row],...]}}
[[nodiscard]] Json encode(const FinStructure& m);
[[nodiscard]] StructurePtr decode_structure(const Json& j);

// {"beta":[3,4,5,...],"base":[int,...]}
[[nodiscard]] Json encode(const NBetaSub& sub);
[[nodiscard]] NBetaSub decode_nbeta_sub(const Json& j);

// {"tuple":[int,...],"rot":int}
[[nodiscard]] Json encode(const NBetaElement& e);
[[nodiscard]] NBetaElement decode_element(const Json& j);

// {"alpha":"<spec>","beta":[...],"horizon":H,"checked_k":K,"ok":true}
[[nodiscard]] Json encode(const BetaCertificate& cert);
[[nodiscard]] BetaCertificate decode_beta_certificate(const Json& j);

/// Comma separated integers, e.g. "3,4,5".
[[nodiscard]] std::vector<std::uint64_t> parse_int_list(const std::string& text);

}  // namespace sunflower::io
