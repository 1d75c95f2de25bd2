#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pipeserve/types.hpp"

namespace pipeserve {

// Operator parameter payloads. Each payload type has a canonical
// little-endian serialization; the checksum of those bytes is the payload's
// identity everywhere (store, bundles, catalog keys).

enum class ParamType : uint8_t {
    Dictionary = 1,
    LinearWeights = 2,
    Centroids = 3,
    PcaBasis = 4,
    Trees = 5,
    TokenRules = 6,
    CsvConfig = 7,
    SelectConfig = 8,
    StageLayout = 9,
};

const char* param_type_name(ParamType t);

struct TransparentStringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    size_t operator()(const std::string& s) const { return std::hash<std::string_view>{}(s); }
};

using TermIndex = std::unordered_map<std::string, uint32_t, TransparentStringHash, std::equal_to<>>;

enum class NgramMode : uint8_t { Char = 0, Word = 1 };

// Explicit term -> feature-index map. Indices are dense 0..size-1 in term
// order; out-of-dictionary n-grams are dropped at featurization time.
struct DictionaryParam {
    NgramMode mode = NgramMode::Char;
    uint8_t n = 3;
    std::vector<std::string> terms;
    TermIndex index;  // rebuilt on decode

    uint32_t size() const { return static_cast<uint32_t>(terms.size()); }
};

struct LinearParam {
    float bias = 0.0f;
    std::vector<float> weights;
};

struct CentroidsParam {
    uint32_t k = 0;
    uint32_t dim = 0;
    std::vector<float> data;     // row-major k x dim
    std::vector<float> norms2;   // per-centroid squared norms, rebuilt on decode

    const float* centroid(uint32_t i) const { return data.data() + size_t(i) * dim; }
};

struct PcaParam {
    uint32_t out_dim = 0;
    uint32_t in_dim = 0;
    std::vector<float> mean;  // in_dim
    std::vector<float> rows;  // row-major out_dim x in_dim
    std::vector<double> rows_dot_mean;  // per-row dot with mean, rebuilt on decode

    const float* row(uint32_t i) const { return rows.data() + size_t(i) * in_dim; }
};

struct TreeNode {
    int32_t feature = -1;  // -1 marks a leaf
    float value = 0.0f;    // threshold for splits, output for leaves
    uint32_t left = 0;     // taken when x[feature] <= threshold
    uint32_t right = 0;
};

enum class TreeAggregate : uint8_t { Sum = 0, Average = 1 };

struct TreesParam {
    TreeAggregate aggregate = TreeAggregate::Sum;
    std::vector<std::vector<TreeNode>> trees;  // node 0 is each tree's root
};

enum class TokenizeMode : uint8_t { WhitespacePunct = 0 };

struct TokenRulesParam {
    TokenizeMode mode = TokenizeMode::WhitespacePunct;
};

struct CsvConfigParam {
    char separator = ',';
    std::vector<Column> columns;
};

struct SelectConfigParam {
    std::string column;
};

// Stage structural constants produced by the plan compiler: resolved kernel
// sequence, slot wiring, concat offsets, weight slices, capacity demands.
// Serialized canonically so identical stages share one catalog entry.
struct StageLayoutParam {
    struct TransformEntry {
        std::string kernel_key;
        TransformKind kind;
        std::vector<int32_t> input_slots;  // < 0: external input ~idx, >= 0: chain position
        uint32_t output_capacity = 0;      // floats demanded for the output
        DataType output_type;
        // Kind-specific constants.
        uint32_t field_index = 0;      // select
        uint8_t separator = ',';       // csv/select
        uint32_t ngram_n = 0;          // ngram
        uint32_t slice_offset = 0;     // partial_linear
        uint32_t slice_length = 0;     // partial_linear
        std::vector<uint32_t> concat_offsets;
        std::vector<Checksum> param_refs;  // payload checksums this transform reads
    };
    std::vector<TransformEntry> transforms;
    // Which chain positions are exported to other stages / the response.
    std::vector<uint32_t> output_positions;
    uint32_t external_inputs = 0;
};

using ParamValue = std::variant<DictionaryParam, LinearParam, CentroidsParam, PcaParam, TreesParam,
                                TokenRulesParam, CsvConfigParam, SelectConfigParam, StageLayoutParam>;

ParamType param_type(const ParamValue& v);

// Canonical serialization. encode_param is the only byte producer; blobs on
// disk and in the store are exactly these bytes.
std::vector<uint8_t> encode_param(const ParamValue& v);
ParamValue decode_param(std::span<const uint8_t> bytes);  // throws StoreError on malformed payloads
ParamType peek_param_type(std::span<const uint8_t> bytes);

}  // namespace pipeserve
