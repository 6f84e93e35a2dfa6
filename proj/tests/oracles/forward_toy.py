"""Reference forward pass for the one-pair toy model (input width 4, h=2, d=2).

Prints the values frozen into tests/unit/test_autoencoder.cpp. Weights follow
the same closed-form fill as toy_model() in that file.
"""
import numpy as np

np.set_printoptions(precision=17)


def fill(k, rows, cols):
    w = np.empty((rows, cols))
    for r in range(rows):
        for c in range(cols):
            w[r, c] = 0.9 * np.sin(2.1 * k + 1.7 * r + 0.9 * c + 0.4)
    b = np.array([0.1 * np.cos(2.1 * k + 0.5 * r) for r in range(rows)])
    return w, b


def relu(x):
    return np.maximum(x, 0.0)


def softmax(x):
    e = np.exp(x - x.max())
    return e / e.sum()


n, h, d = 4, 2, 2
layers = {}
shapes = [("s1", h, n), ("s2", h, n + h), ("a1", h, n), ("a2", h, n + h), ("e", d, 2 * h),
          ("ds1", h, d), ("ds2", n, h), ("da1", h, d), ("da2", n, h)]
for k, (name, rows, cols) in enumerate(shapes):
    layers[name] = fill(k, rows, cols)

p_self = np.array([0.1, 0.2, 0.3, 0.4])
p_agg = np.array([0.25, 0.25, 0.4, 0.1])


def branch(x, l1, l2):
    a1 = relu(layers[l1][0] @ x + layers[l1][1])
    a2 = relu(layers[l2][0] @ np.concatenate([x, a1]) + layers[l2][1])
    return a1, a2


s1, s2 = branch(p_self, "s1", "s2")
g1, g2 = branch(p_agg, "a1", "a2")
z = layers["e"][0] @ np.concatenate([s2, g2]) + layers["e"][1]
q_self = softmax(layers["ds2"][0] @ relu(layers["ds1"][0] @ z + layers["ds1"][1]) + layers["ds2"][1])
q_agg = softmax(layers["da2"][0] @ relu(layers["da1"][0] @ z + layers["da1"][1]) + layers["da2"][1])
kl = float(np.sum(p_self * np.log(p_self / q_self)) + np.sum(p_agg * np.log(p_agg / q_agg)))

for name, v in [("self act1", s1), ("self act2", s2), ("agg act1", g1), ("agg act2", g2),
                ("z", z), ("q_self", q_self), ("q_agg", q_agg)]:
    print(name, ", ".join(repr(float(x)) for x in v))
print("loss", repr(kl))
