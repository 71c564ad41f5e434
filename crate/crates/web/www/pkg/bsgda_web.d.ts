/* tslint:disable */
/* eslint-disable */

export class Comparison {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly gda_estimate: Float64Array;
    readonly gda_mse: number;
    readonly gda_nodes: Uint32Array;
    readonly random_estimate: Float64Array;
    readonly random_mse: number;
    readonly random_nodes: Uint32Array;
    readonly truth: Float64Array;
}

export class Coverage {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Covered nodes in breadth-first order.
     */
    readonly members: Uint32Array;
    readonly scales: Float64Array;
}

export class Demo {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Node positions as `[x0, y0, x1, y1, ...]`.
     */
    coords(): Float64Array;
    coverage(root: number, t: number, mu: number, hops: number): Coverage;
    /**
     * Edges as `[i0, j0, i1, j1, ...]`.
     */
    edges(): Uint32Array;
    /**
     * `kind` is `sensor`, `community` or `ba`.
     */
    constructor(kind: string, n: number, seed: bigint);
    reconstruct(k: number, mu: number, seed: bigint): Comparison;
    sample(k: number, mu: number, eps: number): Selection;
    readonly n: number;
}

export class Selection {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly certified_lb: number;
    readonly nodes: Uint32Array;
    readonly t_hat: number;
    readonly valid: boolean;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_comparison_free: (a: number, b: number) => void;
    readonly __wbg_coverage_free: (a: number, b: number) => void;
    readonly __wbg_demo_free: (a: number, b: number) => void;
    readonly __wbg_selection_free: (a: number, b: number) => void;
    readonly comparison_gda_estimate: (a: number) => [number, number];
    readonly comparison_gda_mse: (a: number) => number;
    readonly comparison_gda_nodes: (a: number) => [number, number];
    readonly comparison_random_estimate: (a: number) => [number, number];
    readonly comparison_random_mse: (a: number) => number;
    readonly comparison_random_nodes: (a: number) => [number, number];
    readonly comparison_truth: (a: number) => [number, number];
    readonly coverage_members: (a: number) => [number, number];
    readonly coverage_scales: (a: number) => [number, number];
    readonly demo_coords: (a: number) => [number, number];
    readonly demo_coverage: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly demo_edges: (a: number) => [number, number];
    readonly demo_n: (a: number) => number;
    readonly demo_new: (a: number, b: number, c: number, d: bigint) => [number, number, number];
    readonly demo_reconstruct: (a: number, b: number, c: number, d: bigint) => [number, number, number];
    readonly demo_sample: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly selection_certified_lb: (a: number) => number;
    readonly selection_nodes: (a: number) => [number, number];
    readonly selection_t_hat: (a: number) => number;
    readonly selection_valid: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
