"""Pseudo-label generation and the two-layer GCN node classifier.

The classifier is a plain numpy implementation: forward pass
``Y = softmax(A_hat relu(A_hat X W0) W1)`` with analytic backpropagation and
full-batch gradient descent, one step per graph per epoch. Class column 0 is
Keep, column 1 is Remove; argmax ties keep the node.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

import numpy as np

from .core import EventGraph, TemporalEdge, cosine, is_acyclic
from .merging import greedy_one_to_one

KEEP_COL = 0
REMOVE_COL = 1


class NodeLabel(str, Enum):
    KEEP = "keep"
    REMOVE = "remove"


@dataclass(frozen=True)
class PseudoLabels:
    """Keep/Remove label per node of one merged graph."""

    labels: dict[str, NodeLabel]
    match_threshold: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(self.labels))

    def keep_ids(self) -> set[str]:
        return {nid for nid, lab in self.labels.items() if lab is NodeLabel.KEEP}


def pseudo_labels(
    graph: EventGraph, central: EventGraph, threshold: float = 0.5
) -> PseudoLabels:
    """Label merged-graph nodes by greedy embedding matching against the center graph.

    Pairs are taken highest-cosine first while the score clears the threshold
    and both nodes are unmatched; matched nodes are Keep, the rest Remove.
    """
    if not graph.nodes or not central.nodes:
        raise ValueError("pseudo_labels requires two non-empty graphs")
    matched = greedy_one_to_one(
        graph.node_ids(),
        central.node_ids(),
        lambda a, b: cosine(graph.nodes[a].embedding, central.nodes[b].embedding),
        threshold,
    )
    keep = {a for a, _, _ in matched}
    labels = {
        nid: (NodeLabel.KEEP if nid in keep else NodeLabel.REMOVE) for nid in graph.nodes
    }
    return PseudoLabels(labels=labels, match_threshold=threshold)


# ---------------------------------------------------------------------------
# GCN
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GcnModel:
    """Two-layer GCN weights plus training metadata."""

    w0: np.ndarray  # D x H
    w1: np.ndarray  # H x 2
    seed: int
    epochs: int
    learning_rate: float
    loss_history: tuple[float, ...] = ()

    def __post_init__(self):
        w0 = np.asarray(self.w0, dtype=float)
        w1 = np.asarray(self.w1, dtype=float)
        if w0.ndim != 2 or w1.ndim != 2 or w0.shape[1] != w1.shape[0] or w1.shape[1] != 2:
            raise ValueError(f"inconsistent weight shapes {w0.shape} / {w1.shape}")
        if not (np.isfinite(w0).all() and np.isfinite(w1).all()):
            raise ValueError("model weights must be finite")
        object.__setattr__(self, "w0", w0)
        object.__setattr__(self, "w1", w1)

    @property
    def dim(self) -> int:
        return self.w0.shape[0]

    @property
    def hidden(self) -> int:
        return self.w0.shape[1]


def init_model(dim: int, hidden: int = 64, seed: int = 0, epochs: int = 0, learning_rate: float = 1e-4) -> GcnModel:
    """Glorot-uniform initialization: U(-s, s) with s = sqrt(6/(fan_in+fan_out))."""
    rng = np.random.default_rng(seed)
    s0 = np.sqrt(6.0 / (dim + hidden))
    s1 = np.sqrt(6.0 / (hidden + 2))
    return GcnModel(
        w0=rng.uniform(-s0, s0, size=(dim, hidden)),
        w1=rng.uniform(-s1, s1, size=(hidden, 2)),
        seed=seed,
        epochs=epochs,
        learning_rate=learning_rate,
    )


def normalize_adjacency(graph: EventGraph) -> np.ndarray:
    """Symmetric degree-normalized adjacency with self-loops over sorted node ids."""
    ids = graph.node_ids()
    pos = {nid: i for i, nid in enumerate(ids)}
    n = len(ids)
    a = np.zeros((n, n), dtype=float)
    for e in graph.edges:
        i, j = pos[e.src], pos[e.dst]
        a[i, j] = 1.0
        a[j, i] = 1.0
    a_tilde = a + np.eye(n)
    d_inv_sqrt = 1.0 / np.sqrt(a_tilde.sum(axis=1))
    return a_tilde * d_inv_sqrt[:, None] * d_inv_sqrt[None, :]


def _softmax(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def gcn_forward(x: np.ndarray, a_hat: np.ndarray, model: GcnModel) -> np.ndarray:
    """Row-stochastic class probabilities for every node."""
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if x.ndim != 2 or x.shape[1] != model.dim:
        raise ValueError(f"feature matrix {x.shape} does not match model dim {model.dim}")
    if a_hat.shape != (n, n):
        raise ValueError(f"adjacency {a_hat.shape} does not match {n} nodes")
    h = np.maximum(a_hat @ x @ model.w0, 0.0)
    return _softmax(a_hat @ h @ model.w1)


def mlp_forward(x: np.ndarray, model: GcnModel) -> np.ndarray:
    """Feature-only ablation: the same network with the identity adjacency."""
    return gcn_forward(x, np.eye(np.asarray(x).shape[0]), model)


def loss_and_gradients(
    x: np.ndarray, a_hat: np.ndarray, model: GcnModel, targets: np.ndarray
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean per-node cross-entropy and its analytic gradients wrt W0, W1.

    ``targets`` is an N x 2 one-hot matrix.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    z1 = a_hat @ x @ model.w0
    h = np.maximum(z1, 0.0)
    z2 = a_hat @ h @ model.w1
    shifted = z2 - z2.max(axis=1, keepdims=True)
    log_probs = shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))
    loss = -float((targets * log_probs).sum()) / n

    y = np.exp(log_probs)
    d_z2 = (y - targets) / n
    d_w1 = (a_hat @ h).T @ d_z2
    d_h = a_hat @ d_z2 @ model.w1.T
    d_z1 = d_h * (z1 > 0.0)
    d_w0 = (a_hat @ x).T @ d_z1
    return loss, d_w0, d_w1


def _graph_tensors(graph: EventGraph, labels: PseudoLabels, use_adjacency: bool) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ids = graph.node_ids()
    missing = set(ids) - set(labels.labels)
    if missing:
        raise ValueError(f"labels missing for nodes {sorted(missing)[:3]}")
    x = np.stack([graph.nodes[nid].embedding for nid in ids])
    a_hat = normalize_adjacency(graph) if use_adjacency else np.eye(len(ids))
    t = np.zeros((len(ids), 2))
    for i, nid in enumerate(ids):
        t[i, KEEP_COL if labels.labels[nid] is NodeLabel.KEEP else REMOVE_COL] = 1.0
    return x, a_hat, t


def gcn_train(
    dataset: list[tuple[EventGraph, PseudoLabels]],
    epochs: int = 10,
    learning_rate: float = 1e-4,
    seed: int = 0,
    hidden: int = 64,
    use_adjacency: bool = True,
    epoch_callback: Callable[[int, GcnModel], None] | None = None,
) -> GcnModel:
    """Full-batch gradient descent, one step per graph per epoch, in dataset order.

    The returned model carries the per-epoch mean training loss. Set
    ``use_adjacency=False`` to train the MLP ablation with the same loop.
    """
    if not dataset:
        raise ValueError("training dataset is empty")
    dims = {g.nodes[nid].embedding.shape[0] for g, _ in dataset for nid in g.nodes}
    if len(dims) != 1:
        raise ValueError(f"training graphs disagree on embedding dimension: {sorted(dims)}")
    dim = dims.pop()

    tensors = [_graph_tensors(g, lab, use_adjacency) for g, lab in dataset]
    model = init_model(dim, hidden=hidden, seed=seed, epochs=epochs, learning_rate=learning_rate)
    w0, w1 = model.w0.copy(), model.w1.copy()
    history: list[float] = []
    for epoch in range(epochs):
        epoch_losses = []
        for x, a_hat, t in tensors:
            step = replace(model, w0=w0, w1=w1)
            loss, d_w0, d_w1 = loss_and_gradients(x, a_hat, step, t)
            if not np.isfinite(loss):
                raise ArithmeticError(f"non-finite training loss at epoch {epoch}")
            w0 = w0 - learning_rate * d_w0
            w1 = w1 - learning_rate * d_w1
            epoch_losses.append(loss)
        history.append(float(np.mean(epoch_losses)))
        if epoch_callback is not None:
            epoch_callback(epoch, replace(model, w0=w0.copy(), w1=w1.copy(), loss_history=tuple(history)))
    return replace(model, w0=w0, w1=w1, loss_history=tuple(history))


def prune(graph: EventGraph, model: GcnModel, use_adjacency: bool = True) -> EventGraph:
    """Drop nodes the classifier labels Remove; incident edges go with them.

    Deleting nodes cannot create a cycle, so the result is asserted acyclic
    rather than re-dagified. The side label survives and the graph role is
    marked neutral.
    """
    if not graph.nodes:
        return replace(graph, role="neutral")
    ids = graph.node_ids()
    x = np.stack([graph.nodes[nid].embedding for nid in ids])
    a_hat = normalize_adjacency(graph) if use_adjacency else np.eye(len(ids))
    y = gcn_forward(x, a_hat, model)
    kept = {nid for i, nid in enumerate(ids) if y[i, KEEP_COL] >= y[i, REMOVE_COL]}
    nodes = {nid: graph.nodes[nid] for nid in kept}
    edges = tuple(
        TemporalEdge(src=e.src, dst=e.dst, confidence=e.confidence)
        for e in graph.edges
        if e.src in kept and e.dst in kept
    )
    out = EventGraph(topic_id=graph.topic_id, side=graph.side, nodes=nodes, edges=edges, role="neutral")
    assert is_acyclic(out), "node deletion must preserve acyclicity"
    return out


# ---------------------------------------------------------------------------
# Checkpoint format: plain numeric text, 17 significant digits
# ---------------------------------------------------------------------------

def save_checkpoint(model: GcnModel, path) -> None:
    """Header (D, H, seed, epochs, lr), row-major W0 and W1, loss trajectory."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{model.dim} {model.hidden} {model.seed} {model.epochs} {model.learning_rate:.17g}\n")
        for row in model.w0:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
        for row in model.w1:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
        fh.write(f"{len(model.loss_history)}\n")
        if model.loss_history:
            fh.write(" ".join(f"{v:.17g}" for v in model.loss_history) + "\n")


def load_checkpoint(path) -> GcnModel:
    with open(path, encoding="utf-8") as fh:
        tokens = fh.read().split()
    it = iter(tokens)
    try:
        dim, hidden, seed, epochs = int(next(it)), int(next(it)), int(next(it)), int(next(it))
        lr = float(next(it))
        w0 = np.array([float(next(it)) for _ in range(dim * hidden)]).reshape(dim, hidden)
        w1 = np.array([float(next(it)) for _ in range(hidden * 2)]).reshape(hidden, 2)
        n_loss = int(next(it))
        losses = tuple(float(next(it)) for _ in range(n_loss))
    except StopIteration:
        raise ValueError(f"{path}: truncated checkpoint") from None
    return GcnModel(w0=w0, w1=w1, seed=seed, epochs=epochs, learning_rate=lr, loss_history=losses)
