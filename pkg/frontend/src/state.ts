/** Client session state.
 *
 * The store never computes a quiver, potential, or dimension itself: every
 * displayed quantity is read back from the last server response.  Actions
 * are queued so at most one request per session is in flight.
 */

import { ApiClient, ApiError, FetchLike } from "./api.js";
import { layoutGraph } from "./layout.js";
import type {
  HistoryEntry,
  InlineError,
  NodeJson,
  PotentialLine,
  QpJson,
  SessionJson,
  ViewState,
} from "./types.js";

export class ExplorerSession {
  private readonly api: ApiClient;
  private chain: Promise<unknown> = Promise.resolve();
  state: SessionJson | null = null;
  inlineError: InlineError | null = null;

  constructor(base: string, fetchImpl?: FetchLike) {
    this.api = new ApiClient(base, fetchImpl);
  }

  /** Serialize actions: each starts only after the previous one settled. */
  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.chain.then(job, job);
    this.chain = next.catch(() => undefined);
    return next;
  }

  loadSession(qp: QpJson): Promise<ViewState> {
    return this.enqueue(async () => {
      this.state = await this.api.createSession(qp);
      this.inlineError = null;
      return this.view();
    });
  }

  clickVertex(vertex: string): Promise<ViewState> {
    return this.enqueue(async () => {
      if (!this.state) {
        throw new Error("no session loaded");
      }
      try {
        this.state = await this.api.mutate(this.state.id, vertex);
        this.inlineError = null;
      } catch (err) {
        if (err instanceof ApiError) {
          this.inlineError = { vertex, code: err.code, detail: err.detail };
        } else {
          throw err;
        }
      }
      return this.view();
    });
  }

  checkoutHistory(node: number): Promise<ViewState> {
    return this.enqueue(async () => {
      if (!this.state) {
        throw new Error("no session loaded");
      }
      this.state = await this.api.checkout(this.state.id, node);
      this.inlineError = null;
      return this.view();
    });
  }

  refresh(): Promise<ViewState> {
    return this.enqueue(async () => {
      if (!this.state) {
        throw new Error("no session loaded");
      }
      this.state = await this.api.getSession(this.state.id);
      return this.view();
    });
  }

  currentNode(): NodeJson {
    if (!this.state) {
      throw new Error("no session loaded");
    }
    const node = this.state.nodes[this.state.current];
    if (!node || node.id !== this.state.current) {
      return this.state.nodes.find((n) => n.id === this.state!.current)!;
    }
    return node;
  }

  /** The current QP exactly as the server serialized it, for download. */
  exportCurrent(): { filename: string; content: string } {
    const node = this.currentNode();
    return {
      filename: `qp-session-${this.state!.id}-node-${node.id}.json`,
      content: JSON.stringify(node.qp, null, 2) + "\n",
    };
  }

  view(): ViewState {
    if (!this.state) {
      throw new Error("no session loaded");
    }
    const node = this.currentNode();
    const layout = layoutGraph(
      node.qp.quiver.vertices,
      node.qp.quiver.arrows,
      640,
      440,
      node.two_cycle_vertices,
    );
    const potential: PotentialLine[] = node.qp.potential.terms.map((t) => ({
      coeff: t.coeff,
      word: t.path ?? [`e(${t.vertex})`],
    }));
    const depths = new Map<number, number>();
    const history: HistoryEntry[] = this.state.nodes.map((n) => {
      const depth = n.parent === null ? 0 : (depths.get(n.parent) ?? 0) + 1;
      depths.set(n.id, depth);
      return {
        id: n.id,
        parent: n.parent,
        vertex: n.vertex,
        depth,
        selected: n.id === this.state!.current,
        involutionMatch: n.involution_match,
      };
    });
    return {
      sessionId: this.state.id,
      current: this.state.current,
      layout,
      potential,
      jacobian: node.jacobian_dims,
      history,
      disabledVertices: node.two_cycle_vertices,
      inlineError: this.inlineError,
      involutionBadge: node.involution_match === true,
    };
  }
}

/** (parent, vertex) edges of the history tree, for structural comparison. */
export function historyTreeShape(state: SessionJson): Array<[number | null, string | null]> {
  return state.nodes.map((n) => [n.parent, n.vertex]);
}
