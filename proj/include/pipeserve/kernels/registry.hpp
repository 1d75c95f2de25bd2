#pragma once

#include <span>
#include <string>
#include <vector>

#include "pipeserve/params.hpp"
#include "pipeserve/pool.hpp"
#include "pipeserve/types.hpp"
#include "pipeserve/vector.hpp"

namespace pipeserve::kern {

enum class ExecStatus : uint8_t {
    Ok = 0,
    SchemaError = 1,    // record does not match the input schema
    CapacityError = 2,  // output exceeded the stats-declared bound
    InternalError = 3,
};

struct ResolvedTransform;

// Execution context for one stage run. Chain slots hold each transform's
// output; external inputs are vectors produced by dependency stages (slot
// ref < 0 encodes ~index into them). Kernels allocate nothing: scratch
// comes from the arena, outputs go into pre-bound buffers.
struct StageExecCtx {
    std::span<const DataVector* const> external_inputs;
    DataVector* chain_slots = nullptr;
    ScratchArena* arena = nullptr;

    ExecStatus status = ExecStatus::Ok;
    uint32_t error_field = 0;  // column index for schema errors

    const DataVector& input(const ResolvedTransform& t, size_t i) const;

    void fail(ExecStatus s, uint32_t field = 0) {
        status = s;
        error_field = field;
    }
};

using KernelFn = void (*)(StageExecCtx&, const ResolvedTransform&);

// A transform bound to its kernel and decoded parameters; built once at
// plan registration, shared read-only by every executing worker.
struct ResolvedTransform {
    const StageLayoutParam::TransformEntry* layout = nullptr;
    uint32_t chain_pos = 0;
    KernelFn fn = nullptr;

    const DictionaryParam* dict = nullptr;
    const LinearParam* linear = nullptr;
    const CentroidsParam* centroids = nullptr;
    const PcaParam* pca = nullptr;
    const TreesParam* trees = nullptr;
    const TokenRulesParam* token_rules = nullptr;
    const CsvConfigParam* csv = nullptr;
    const SelectConfigParam* select = nullptr;
};

struct KernelInfo {
    std::string key;
    TransformKind kind;
    Density input_density;
    bool vectorized;  // uses the runtime-dispatched SIMD ops
    KernelFn fn;
};

// Static table of pre-registered physical implementations.
const std::vector<KernelInfo>& kernel_table();
const KernelInfo* find_kernel(std::string_view key);

// Implementation selection by stage signature. Throws CompileError naming
// the signature when nothing is registered for it.
const KernelInfo& select_kernel(TransformKind kind, Density input_density, bool vectorizable);
std::string signature_string(TransformKind kind, Density input_density, bool vectorizable);

// Runs one resolved transform chain. Exported positions must have pooled
// buffers bound in chain_slots before the call; internal intermediates are
// arena-backed by the executor.
void execute_chain(StageExecCtx& ctx, std::span<const ResolvedTransform> chain,
                   std::span<const uint8_t> internal_mask);

}  // namespace pipeserve::kern
