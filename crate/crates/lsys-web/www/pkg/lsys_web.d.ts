/* tslint:disable */
/* eslint-disable */

/**
 * Full report of the system with boundary parameter h; `mu = Infinity` is
 * the state-space parameter at infinity.
 */
export function analyze(nu: number, h_re: number, h_im: number, mu: number): string;

/**
 * kappa against Im h along the extremal line, or along the sectorial ray when
 * `beta` is a number.
 */
export function curve(nu: number, beta: number, im_min: number, im_max: number, samples: number): string;

/**
 * Dual c-entropy problem; names as on the command line (`max-entropy`,
 * `extremal`, ...). Unused numeric arguments are `NaN`.
 */
export function solve_problem(nu: number, problem: string, regime: string, beta: number, entropy: number, dissipation: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze: (a: number, b: number, c: number, d: number) => [number, number];
    readonly curve: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly solve_problem: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
