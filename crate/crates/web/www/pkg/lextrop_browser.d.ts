/* tslint:disable */
/* eslint-disable */

/**
 * Membership of a weight in the tropical variety, with the initial form.
 */
export function membership(polynomial: string, tower: string, weight: string): string;

/**
 * Lifted points, lower edges and root valuations of a univariate
 * polynomial over the given tower.
 */
export function newton_polygon(polynomial: string, tower: string): string;

/**
 * Tropical curve of a bivariate polynomial over `QQ((t))`, clipped to
 * `[-bound, bound]^2`: one entry per cell with its outline and the
 * initial form on it.
 */
export function tropical_curve(polynomial: string, bound: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly membership: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly newton_polygon: (a: number, b: number, c: number, d: number) => [number, number];
    readonly tropical_curve: (a: number, b: number, c: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
