#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pipeserve {

// 256-bit content digest. Identity of every stored parameter payload.
struct Checksum {
    std::array<uint8_t, 32> bytes{};

    bool operator==(const Checksum&) const = default;
    auto operator<=>(const Checksum&) const = default;

    std::string hex() const;
    static Checksum from_hex(std::string_view hex);
};

struct ChecksumHash {
    size_t operator()(const Checksum& c) const {
        size_t h;
        static_assert(sizeof(h) <= sizeof(c.bytes));
        __builtin_memcpy(&h, c.bytes.data(), sizeof(h));
        return h;
    }
};

enum class DTypeKind : uint8_t {
    Text = 0,
    Tokens = 1,
    FloatScalar = 2,
    FloatVector = 3,
};

enum class Density : uint8_t { Dense = 0, Sparse = 1 };

struct DataType {
    DTypeKind kind = DTypeKind::Text;
    Density density = Density::Dense;  // FloatVector only
    uint32_t max_length = 0;           // FloatVector only, > 0

    static DataType text() { return {DTypeKind::Text, Density::Dense, 0}; }
    static DataType tokens() { return {DTypeKind::Tokens, Density::Dense, 0}; }
    static DataType scalar() { return {DTypeKind::FloatScalar, Density::Dense, 0}; }
    static DataType dense(uint32_t n) { return {DTypeKind::FloatVector, Density::Dense, n}; }
    static DataType sparse(uint32_t n) { return {DTypeKind::FloatVector, Density::Sparse, n}; }

    bool is_vector() const { return kind == DTypeKind::FloatVector; }
    bool operator==(const DataType&) const = default;

    std::string to_string() const;
};

struct Column {
    std::string name;
    DataType dtype;
    bool operator==(const Column&) const = default;
};

// Ordered column list; names unique, order significant (concat offsets
// depend on it).
struct Schema {
    std::vector<Column> columns;

    bool operator==(const Schema&) const = default;
    const Column* find(std::string_view name) const;
    int index_of(std::string_view name) const;  // -1 when absent
    std::string to_string() const;
};

enum class TransformKind : uint8_t {
    CsvSource = 0,
    Select = 1,
    Tokenize = 2,
    CharNgram = 3,
    WordNgram = 4,
    Concat = 5,
    NormalizeL2 = 6,
    PcaProject = 7,
    KMeansFeaturize = 8,
    TreeEnsemble = 9,
    LinearBinaryClassifier = 10,
    // Synthesized by the optimizer; never appears in user-built graphs.
    PartialLinear = 11,
    LinearJoin = 12,
};

const char* kind_name(TransformKind k);
std::optional<TransformKind> kind_from_name(std::string_view name);

// True for kinds a user may append to a pipeline.
bool is_user_kind(TransformKind k);
// Final predictors allowed at the sink.
bool is_predictor(TransformKind k);
// Transforms requiring full materialization of inputs before successors.
bool is_pipeline_breaker(TransformKind k);
// One-at-a-time transforms (candidates for vectorized kernels).
bool is_compute_bound(TransformKind k);
// Kinds that carry a parameter payload.
bool kind_has_params(TransformKind k);
// Expected input arity: 0 for sources, 2+ for Concat (returns -1), 1 otherwise.
int kind_arity(TransformKind k);

struct TrainingStats {
    uint32_t max_vector_size = 0;
    Density density = Density::Sparse;
    bool vectorizable = false;

    bool operator==(const TrainingStats&) const = default;
};

using NodeId = uint32_t;
using StageId = uint32_t;
using PlanId = uint64_t;

inline constexpr NodeId kNoNode = 0xffffffffu;

// Raised by graph construction and the optimizer's validation rules.
class ValidationError : public std::runtime_error {
public:
    ValidationError(NodeId node, std::string rule, const std::string& msg)
        : std::runtime_error("[" + rule + "] node " +
                             (node == kNoNode ? std::string("-") : std::to_string(node)) + ": " + msg),
          node_id(node),
          rule_name(std::move(rule)) {}

    NodeId node_id;
    std::string rule_name;
};

// Raised by the model-plan compiler when a stage has no registered
// physical implementation.
class CompileError : public std::runtime_error {
public:
    CompileError(std::string sig, const std::string& msg)
        : std::runtime_error(msg), signature(std::move(sig)) {}

    std::string signature;
};

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BundleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pipeserve

template <>
struct std::hash<pipeserve::Checksum> {
    size_t operator()(const pipeserve::Checksum& c) const { return pipeserve::ChecksumHash{}(c); }
};
