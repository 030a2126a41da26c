// Shapes of the JSON written by `mltk repo-build`. Paths are relative to the site root.

export type Strategy = "random" | "stratified" | "iterative";
export type RepoScheme = "holdout" | "2x5fcv" | "10cv";
export type Format = "mulan" | "meka" | "keel" | "libsvm" | "csv";

export const STRATEGIES: Strategy[] = ["random", "stratified", "iterative"];
export const SCHEMES: RepoScheme[] = ["holdout", "2x5fcv", "10cv"];
export const FORMATS: Format[] = ["mulan", "meka", "keel", "libsvm", "csv"];

/** One row of json/index.json. */
export interface CatalogRow {
  name: string;
  instances: number;
  inputs: number;
  labels: number;
  labelsets: number;
  cardinality: number;
  density: number;
  mean_ir: number | null;
  scumble: number;
  tcs: number;
  sparsity: number;
  json: string;
}

export interface RepoIndex {
  title: string;
  accent_color: string;
  generated_at: string;
  datasets: CatalogRow[];
}

export interface MeasureBundle {
  num_attributes: number;
  num_inputs: number;
  num_labels: number;
  num_instances: number;
  num_labelsets: number;
  num_single_labelsets: number;
  max_frequency: number;
  cardinality: number;
  density: number;
  mean_ir: number | null;
  scumble: number;
  scumble_cv: number;
  tcs: number;
}

export interface LabelStats {
  name: string;
  count: number;
  frequency: number;
  irlbl: number | null;
  scumble: number;
  scumble_cv: number;
}

export type AttributeMeta =
  | { name: string; type: "numeric" }
  | { name: string; type: "nominal"; categories: string[] }
  | { name: string; type: "label" };

export interface Download {
  strategy?: Strategy;
  scheme?: RepoScheme;
  format: Format;
  path: string;
}

export interface Seeds {
  holdout: number;
  kfolds: number;
  repeated: [number, number];
}

/** json/<name>.json */
export interface DatasetRecord {
  name: string;
  measures: MeasureBundle;
  labels: LabelStats[];
  attributes: AttributeMeta[];
  sparsity: { ratio: number; ratio_with_summary_columns: number };
  citation: string | null;
  full?: Download;
  downloads: Download[];
  seeds?: Seeds;
}

export function archivePath(name: string, strategy: Strategy, scheme: RepoScheme, format: Format): string {
  return `partitions/${name}/${name}-${strategy}-${scheme}-${format}.tar.gz`;
}
