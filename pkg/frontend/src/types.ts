/** Wire formats of the session server, mirrored verbatim. */

export interface ArrowJson {
  id: string;
  tail: string;
  head: string;
}

export interface QuiverJson {
  vertices: string[];
  arrows: ArrowJson[];
}

export interface TermJson {
  path?: string[];
  vertex?: string;
  coeff: string;
}

export interface PotentialJson {
  order: number;
  terms: TermJson[];
  cyclic?: boolean;
}

export interface QpJson {
  order: number;
  quiver: QuiverJson;
  potential: PotentialJson;
}

export interface JacobianJson {
  order: number;
  dims: number[];
  trusted_below_degree: number;
  total: number;
}

export interface NodeJson {
  id: number;
  parent: number | null;
  vertex: string | null;
  qp: QpJson;
  jacobian_dims: JacobianJson;
  two_cycle_vertices: string[];
  mutable_vertices: string[];
  involution_match: boolean | null;
}

export interface SessionJson {
  id: string;
  created_at: number;
  current: number;
  nodes: NodeJson[];
}

export interface ApiErrorJson {
  error: string;
  detail: string;
}

/** Everything the explorer draws, derived from the last server response. */

export interface VertexLayout {
  id: string;
  x: number;
  y: number;
  disabled: boolean;
}

export interface EdgeCurve {
  arrowId: string;
  d: string; // SVG path
  labelX: number;
  labelY: number;
}

export interface EdgeGroup {
  tail: string;
  head: string;
  count: number;
  curves: EdgeCurve[];
  /** multiplicity badge text, set when the group is drawn as one curve */
  badge: string | null;
}

export interface GraphLayout {
  width: number;
  height: number;
  vertices: VertexLayout[];
  edges: EdgeGroup[];
}

export interface PotentialLine {
  coeff: string;
  word: string[];
}

export interface HistoryEntry {
  id: number;
  parent: number | null;
  vertex: string | null;
  depth: number;
  selected: boolean;
  involutionMatch: boolean | null;
}

export interface InlineError {
  vertex: string | null;
  code: string;
  detail: string;
}

export interface ViewState {
  sessionId: string;
  current: number;
  layout: GraphLayout;
  potential: PotentialLine[];
  jacobian: JacobianJson;
  history: HistoryEntry[];
  disabledVertices: string[];
  inlineError: InlineError | null;
  involutionBadge: boolean;
}
