/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_comparison_free: (a: number, b: number) => void;
export const __wbg_coverage_free: (a: number, b: number) => void;
export const __wbg_demo_free: (a: number, b: number) => void;
export const __wbg_selection_free: (a: number, b: number) => void;
export const comparison_gda_estimate: (a: number) => [number, number];
export const comparison_gda_mse: (a: number) => number;
export const comparison_gda_nodes: (a: number) => [number, number];
export const comparison_random_estimate: (a: number) => [number, number];
export const comparison_random_mse: (a: number) => number;
export const comparison_random_nodes: (a: number) => [number, number];
export const comparison_truth: (a: number) => [number, number];
export const coverage_members: (a: number) => [number, number];
export const coverage_scales: (a: number) => [number, number];
export const demo_coords: (a: number) => [number, number];
export const demo_coverage: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const demo_edges: (a: number) => [number, number];
export const demo_n: (a: number) => number;
export const demo_new: (a: number, b: number, c: number, d: bigint) => [number, number, number];
export const demo_reconstruct: (a: number, b: number, c: number, d: bigint) => [number, number, number];
export const demo_sample: (a: number, b: number, c: number, d: number) => [number, number, number];
export const selection_certified_lb: (a: number) => number;
export const selection_nodes: (a: number) => [number, number];
export const selection_t_hat: (a: number) => number;
export const selection_valid: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
