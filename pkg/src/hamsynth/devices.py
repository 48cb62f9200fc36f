"""Device models: named Hamiltonian sets, switch tables and the cyclic
application order used by pulse sequences.

Every Hamiltonian is stored both as its list of Pauli terms (so that a
device round-trips through the text format exactly) and as the assembled
matrix.

Device-config text format::

    # comment
    name heis2
    qubits 2
    param J12 0.1            # optional, informational
    cycle H1 H2 H3           # optional, defaults to listed order
    hamiltonian H1
    term 1.0 ZI
    hamiltonian H3
    term 0.1 XX
    term 0.1 YY
    switch 01 -> H1          # optional
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DeviceConfigError, DeviceError, PauliParseError
from .linalg import as_hermitian, pauli_string


@dataclass(frozen=True)
class DeviceModel:
    name: str
    num_qubits: int
    labels: tuple
    terms: tuple  # per Hamiltonian: tuple of (coeff, pauli letters)
    cycle_order: tuple
    parameters: tuple = ()
    switches: tuple = ()  # (bit pattern, label) pairs
    hamiltonians: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise DeviceError("num_qubits must be positive")
        if not self.labels:
            raise DeviceError("device declares no Hamiltonians")
        if len(set(self.labels)) != len(self.labels):
            raise DeviceError(f"duplicate Hamiltonian labels in {self.labels}")
        if len(self.terms) != len(self.labels):
            raise DeviceError("one term list per Hamiltonian is required")
        if not self.cycle_order:
            raise DeviceError("cycle_order is empty")
        for idx in self.cycle_order:
            if not 0 <= idx < len(self.labels):
                raise DeviceError(f"cycle index {idx} out of range")
        mats = []
        for label, terms in zip(self.labels, self.terms):
            if not terms:
                raise DeviceError(f"Hamiltonian {label!r} has no terms")
            h = np.zeros((2**self.num_qubits,) * 2, dtype=complex)
            for coeff, letters in terms:
                if len(letters) != self.num_qubits:
                    raise DeviceError(
                        f"term {letters!r} of {label!r} has length {len(letters)}, expected {self.num_qubits}"
                    )
                h = h + pauli_string(coeff, letters)
            h = as_hermitian(h)
            h.setflags(write=False)
            mats.append(h)
        object.__setattr__(self, "hamiltonians", tuple(mats))
        if self.switches:
            widths = {len(bits) for bits, _ in self.switches}
            if len(widths) != 1:
                raise DeviceError("switch patterns have inconsistent widths")
            width = widths.pop()
            if width > self.num_qubits + 1:
                raise DeviceError(f"{width} switches exceed the N+1 = {self.num_qubits + 1} bound")
            for bits, label in self.switches:
                if set(bits) - {"0", "1"}:
                    raise DeviceError(f"switch pattern {bits!r} is not binary")
                if label not in self.labels:
                    raise DeviceError(f"switch maps to unknown Hamiltonian {label!r}")

    @property
    def dim(self):
        return 2**self.num_qubits

    @property
    def num_switches(self):
        return len(self.switches[0][0]) if self.switches else 0

    def index(self, label):
        return self.labels.index(label)

    def param(self, name):
        return dict(self.parameters)[name]

    def step_hamiltonians(self, num_steps):
        """Hamiltonian index used by each of ``num_steps`` cyclic steps."""
        cyc = self.cycle_order
        return [cyc[j % len(cyc)] for j in range(num_steps)]


_BUILTIN_PARAMS = {
    "nmr1": (),
    "jj1": ("E_c", "E_J"),
    "heis2": ("B1", "B2", "J12"),
    "heis2perm": ("B1", "B2", "J12"),
    "jj2": ("E_c", "E_J", "E_L"),
}

BUILTIN_DESCRIPTIONS = {
    "nmr1": "1 qubit, orthogonal pair {Z, X}",
    "jj1": "1 qubit charge Josephson junction, gate-voltage switch (E_c, E_J)",
    "heis2": "2 qubits, local fields + switchable Heisenberg exchange (B1, B2, J12)",
    "heis2perm": "2 qubits, Heisenberg exchange that cannot be switched off (B1, B2, J12)",
    "jj2": "2 coupled Josephson junctions, three switches (E_c, E_J, E_L)",
}


def _heisenberg(j):
    return [(j, "XX"), (j, "YY"), (j, "ZZ")]


def builtin_device(name, params=None):
    """Construct one of the built-in devices.

    Parameters must be strictly positive; ``nmr1`` takes none.
    """
    params = dict(params or {})
    if name not in _BUILTIN_PARAMS:
        raise DeviceError(f"unknown device {name!r}; known: {', '.join(_BUILTIN_PARAMS)}")
    required = _BUILTIN_PARAMS[name]
    missing = [p for p in required if p not in params]
    if missing:
        raise DeviceError(f"device {name!r} requires parameter(s) {', '.join(missing)}")
    extra = sorted(set(params) - set(required))
    if extra:
        raise DeviceError(f"device {name!r} does not take parameter(s) {', '.join(extra)}")
    for k in required:
        v = float(params[k])
        if not math.isfinite(v) or v <= 0:
            raise DeviceError(f"parameter {k} must be positive, got {params[k]!r}")
        params[k] = v

    switches = ()
    if name == "nmr1":
        labels = ("H1", "H2")
        terms = (((1.0, "Z"),), ((1.0, "X"),))
    elif name == "jj1":
        ec, ej = params["E_c"], params["E_J"]
        labels = ("H1", "H2")
        terms = (
            ((-0.5 * ej, "X"),),
            ((0.5 * ec, "Z"), (-0.5 * ej, "X")),
        )
        # one gate-voltage switch toggles the charging term
        switches = (("0", "H1"), ("1", "H2"))
    elif name == "heis2":
        b1, b2, j = params["B1"], params["B2"], params["J12"]
        labels = ("H1", "H2", "H3")
        terms = (((b1, "ZI"),), ((b2, "IX"),), tuple(_heisenberg(j)))
    elif name == "heis2perm":
        b1, b2, j = params["B1"], params["B2"], params["J12"]
        labels = ("H1", "H2", "H3")
        terms = (
            tuple([(b1, "ZI")] + _heisenberg(j)),
            tuple([(b2, "IX")] + _heisenberg(j)),
            tuple(_heisenberg(j)),
        )
    else:  # jj2
        ec, ej, el = params["E_c"], params["E_J"], params["E_L"]
        tunnel = [(-0.5 * ej, "XI"), (-0.5 * ej, "IX")]
        labels = ("H1", "H2", "H3", "H4")
        terms = (
            tuple([(0.5 * ec, "ZI"), (0.5 * ec, "IZ")] + tunnel),
            tuple(tunnel + [(-0.5 * el, "YY")]),
            tuple([(0.5 * ec, "IZ")] + tunnel),
            tuple([(0.5 * ec, "ZI")] + tunnel),
        )
        # switch bits: (E_c on qubit 1, E_c on qubit 2, E_L coupling)
        switches = (("110", "H1"), ("001", "H2"), ("010", "H3"), ("100", "H4"))

    return DeviceModel(
        name=name,
        num_qubits=1 if name in ("nmr1", "jj1") else 2,
        labels=labels,
        terms=terms,
        cycle_order=tuple(range(len(labels))),
        parameters=tuple((k, params[k]) for k in required),
        switches=switches,
    )


def builtin_names():
    return list(_BUILTIN_PARAMS)


def builtin_signature(name):
    return _BUILTIN_PARAMS[name]


def hamiltonian_for(device, setting):
    """Hamiltonian selected by a switch setting.

    ``setting`` is a bit string such as ``"01"`` or a sequence of booleans.
    """
    if not device.switches:
        raise DeviceError(f"device {device.name!r} declares no switch table")
    if isinstance(setting, str):
        bits = setting
    else:
        bits = "".join("1" if b else "0" for b in setting)
    if len(bits) != device.num_switches:
        raise DeviceError(f"expected {device.num_switches} switch bit(s), got {len(bits)}")
    for pattern, label in device.switches:
        if pattern == bits:
            return device.hamiltonians[device.index(label)]
    raise DeviceError(f"switch setting {bits!r} selects no Hamiltonian on {device.name!r}")


def _parse_float(tok, line, col):
    try:
        v = float(tok)
    except ValueError:
        raise DeviceConfigError(f"expected a real number, got {tok!r}", line, col) from None
    if not math.isfinite(v):
        raise DeviceConfigError(f"coefficient {tok!r} is not finite", line, col)
    return v


def load_device(config_text):
    """Parse device-config text into a validated :class:`DeviceModel`."""
    name = None
    qubits = None
    cycle = None
    params = []
    blocks = {}  # label -> list of terms, insertion-ordered
    block_lines = {}
    switches = []
    current = None

    for lineno, raw in enumerate(config_text.splitlines(), start=1):
        text = raw.split("#", 1)[0]
        if not text.strip():
            continue
        # token columns are 1-based
        toks = []
        pos = 0
        for tok in text.split():
            pos = text.index(tok, pos)
            toks.append((tok, pos + 1))
            pos += len(tok)
        key, kcol = toks[0]
        args = toks[1:]

        def need(n, key=key, args=args, lineno=lineno):
            if len(args) != n:
                raise DeviceConfigError(f"'{key}' takes {n} argument(s), got {len(args)}", lineno)

        if key == "name":
            if not args:
                raise DeviceConfigError("'name' requires a value", lineno)
            name = " ".join(t for t, _ in args)
        elif key == "qubits":
            need(1)
            tok, col = args[0]
            if not tok.isdigit() or int(tok) < 1:
                raise DeviceConfigError(f"qubit count must be a positive integer, got {tok!r}", lineno, col)
            qubits = int(tok)
        elif key == "param":
            need(2)
            params.append((args[0][0], _parse_float(args[1][0], lineno, args[1][1])))
        elif key == "cycle":
            if not args:
                raise DeviceConfigError("'cycle' requires at least one label", lineno)
            cycle = [(t, lineno, c) for t, c in args]
        elif key == "hamiltonian":
            need(1)
            label = args[0][0]
            if label in blocks:
                raise DeviceConfigError(f"duplicate Hamiltonian label {label!r}", lineno, args[0][1])
            blocks[label] = []
            block_lines[label] = lineno
            current = label
        elif key == "term":
            if current is None:
                raise DeviceConfigError("'term' outside a hamiltonian block", lineno, kcol)
            need(2)
            coeff = _parse_float(args[0][0], lineno, args[0][1])
            letters, col = args[1]
            if qubits is None:
                raise DeviceConfigError("'qubits' must be declared before terms", lineno)
            if len(letters) != qubits:
                raise DeviceConfigError(
                    f"Pauli string {letters!r} has length {len(letters)}, expected {qubits}", lineno, col
                )
            try:
                pauli_string(1.0, letters)
            except PauliParseError as exc:
                raise DeviceConfigError(str(exc), lineno, col + exc.position - 1) from None
            blocks[current].append((coeff, letters.upper()))
        elif key == "switch":
            if len(args) != 3 or args[1][0] != "->":
                raise DeviceConfigError("expected 'switch <bits> -> <label>'", lineno)
            bits, col = args[0]
            if not bits or set(bits) - {"0", "1"}:
                raise DeviceConfigError(f"switch pattern {bits!r} is not binary", lineno, col)
            switches.append((bits, args[2][0], lineno, args[2][1]))
        else:
            raise DeviceConfigError(f"unknown keyword {key!r}", lineno, kcol)

    if name is None:
        raise DeviceConfigError("missing 'name' line")
    if qubits is None:
        raise DeviceConfigError("missing 'qubits' line")
    if not blocks:
        raise DeviceConfigError("no hamiltonian blocks declared")
    for label, terms in blocks.items():
        if not terms:
            raise DeviceConfigError(f"Hamiltonian {label!r} has no terms", block_lines[label])
    labels = tuple(blocks)
    if cycle is None:
        cycle_order = tuple(range(len(labels)))
    else:
        cycle_order = []
        for tok, lineno, col in cycle:
            if tok not in blocks:
                raise DeviceConfigError(f"cycle refers to unknown Hamiltonian {tok!r}", lineno, col)
            cycle_order.append(labels.index(tok))
        cycle_order = tuple(cycle_order)
    for bits, label, lineno, col in switches:
        if label not in blocks:
            raise DeviceConfigError(f"switch maps to unknown Hamiltonian {label!r}", lineno, col)

    try:
        return DeviceModel(
            name=name,
            num_qubits=qubits,
            labels=labels,
            terms=tuple(tuple(blocks[lab]) for lab in labels),
            cycle_order=cycle_order,
            parameters=tuple(params),
            switches=tuple((b, lab) for b, lab, _, _ in switches),
        )
    except DeviceError as exc:
        raise DeviceConfigError(str(exc)) from None


def serialize_device(device):
    """Inverse of :func:`load_device`."""
    out = [f"name {device.name}", f"qubits {device.num_qubits}"]
    out += [f"param {k} {v!r}" for k, v in device.parameters]
    out.append("cycle " + " ".join(device.labels[i] for i in device.cycle_order))
    for label, terms in zip(device.labels, device.terms):
        out.append(f"hamiltonian {label}")
        out += [f"term {c!r} {p}" for c, p in terms]
    out += [f"switch {bits} -> {label}" for bits, label in device.switches]
    return "\n".join(out) + "\n"
