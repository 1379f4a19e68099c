"""Named real Lie algebras of dimension 2, 3 and 4.

Parameterized families keep their constants as prefix expressions in the
parameter names ``h``, ``alpha``, ``beta`` and are substituted exactly at
lookup time.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .algebra import AlgebraDescriptor, StructureConstants
from .errors import InputError, ParameterRangeError, UnknownAlgebraError
from .symbolic import Const, parse, substitute

__all__ = ["CatalogEntry", "CATALOG", "catalog_lookup", "catalog_keys",
           "resolve_name", "sample_descriptors"]

F = Fraction


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    title: str
    dim: int
    constants: tuple
    params: tuple = ()
    range_text: str = ""
    check: object = None
    samples: tuple = ((),)
    aliases: tuple = ()

    def in_range(self, values):
        return True if self.check is None else bool(self.check(**values))


def _c(spec):
    """Parse ``"m kl=v; ..."`` into (mu, kappa, lambda, expr) tuples."""
    out = []
    for part in filter(None, (p.strip() for p in spec.split(";"))):
        lhs, rhs = part.split("=")
        m, kl = lhs.split()
        out.append((int(m) - 1, int(kl[0]) - 1, int(kl[1]) - 1, rhs.strip()))
    return tuple(out)


_ENTRIES = [
    CatalogEntry("2A1", "2A_1", 2, ()),
    CatalogEntry("A2", "A_2", 2, _c("2 12=1")),
    CatalogEntry("Bianchi_I", "Bianchi I", 3, (), aliases=("3A1",)),
    CatalogEntry("Bianchi_II", "Bianchi II", 3, _c("1 23=1"),
                 aliases=("A3,1", "Weyl")),
    CatalogEntry("Bianchi_III", "Bianchi III", 3, _c("2 12=1"),
                 aliases=("A2+A1", "A1+A2")),
    CatalogEntry("Bianchi_IV", "Bianchi IV", 3, _c("1 13=1; 1 23=1; 2 23=1"),
                 aliases=("A3,2",)),
    CatalogEntry("Bianchi_V", "Bianchi V", 3, _c("1 13=1; 2 23=1"),
                 aliases=("A3,3",)),
    CatalogEntry("Bianchi_VI_h", "Bianchi VI_h", 3, _c("1 13=1; 2 23=h"),
                 params=("h",), range_text="h != 0, -1 <= h < 1",
                 check=lambda h: h != 0 and -1 <= h < 1,
                 samples=((F(-1),), (F(-1, 2),), (F(1, 3),))),
    CatalogEntry("Bianchi_VII_h", "Bianchi VII_h", 3,
                 _c("1 13=h; 2 13=-1; 1 23=1; 2 23=h"),
                 params=("h",), range_text="h >= 0",
                 check=lambda h: h >= 0,
                 samples=((F(0),), (F(1, 2),), (F(2),))),
    CatalogEntry("Bianchi_VIII", "Bianchi VIII", 3,
                 _c("1 23=-1; 2 13=-1; 3 12=1"), aliases=("A3,8",)),
    CatalogEntry("Bianchi_IX", "Bianchi IX", 3,
                 _c("1 23=1; 2 13=-1; 3 12=1"), aliases=("A3,9",)),
    CatalogEntry("4A1", "4A_1", 4, ()),
    CatalogEntry("A2+2A1", "A_2 + 2A_1", 4, _c("2 12=1")),
    CatalogEntry("2A2", "2A_2", 4, _c("2 12=1; 4 34=1")),
    CatalogEntry("A3,1+A1", "A_{3,1} + A_1", 4, _c("1 23=1")),
    CatalogEntry("A3,2+A1", "A_{3,2} + A_1", 4, _c("1 13=1; 1 23=1; 2 23=1")),
    CatalogEntry("A3,3+A1", "A_{3,3} + A_1", 4, _c("1 13=1; 2 23=1")),
    CatalogEntry("A3,4+A1", "A_{3,4} + A_1", 4, _c("1 13=1; 2 23=-1")),
    CatalogEntry("A3,5+A1", "A^alpha_{3,5} + A_1", 4, _c("1 13=1; 2 23=alpha"),
                 params=("alpha",), range_text="0 < |alpha| < 1",
                 check=lambda alpha: 0 < abs(alpha) < 1,
                 samples=((F(-1, 2),), (F(1, 3),), (F(3, 4),))),
    CatalogEntry("A3,6+A1", "A_{3,6} + A_1", 4, _c("1 23=1; 2 13=-1")),
    CatalogEntry("A3,7+A1", "A^alpha_{3,7} + A_1", 4,
                 _c("1 13=alpha; 2 13=-1; 1 23=1; 2 23=alpha"),
                 params=("alpha",), range_text="alpha > 0",
                 check=lambda alpha: alpha > 0,
                 samples=((F(1, 4),), (F(1),), (F(3),))),
    CatalogEntry("A3,8+A1", "A_{3,8} + A_1", 4, _c("1 23=-1; 2 13=-1; 3 12=1")),
    CatalogEntry("A3,9+A1", "A_{3,9} + A_1", 4, _c("1 23=1; 2 13=-1; 3 12=1")),
    CatalogEntry("A4,1", "A_{4,1}", 4, _c("1 24=1; 2 34=1")),
    CatalogEntry("A4,2", "A^alpha_{4,2}", 4,
                 _c("1 14=alpha; 2 24=1; 2 34=1; 3 34=1"),
                 params=("alpha",), range_text="alpha != 0",
                 check=lambda alpha: alpha != 0,
                 samples=((F(-1, 2),), (F(1),), (F(2),))),
    CatalogEntry("A4,3", "A_{4,3}", 4, _c("1 14=1; 2 34=1")),
    CatalogEntry("A4,4", "A_{4,4}", 4,
                 _c("1 14=1; 1 24=1; 2 24=1; 2 34=1; 3 34=1")),
    CatalogEntry("A4,5", "A^{alpha,beta}_{4,5}", 4,
                 _c("1 14=1; 2 24=alpha; 3 34=beta"),
                 params=("alpha", "beta"),
                 range_text="alpha*beta != 0, -1 <= alpha <= beta <= 1",
                 check=lambda alpha, beta: alpha * beta != 0 and -1 <= alpha <= beta <= 1,
                 samples=((F(-1), F(1, 2)), (F(1, 2), F(1, 2)), (F(1), F(1)))),
    CatalogEntry("A4,6", "A^{alpha,beta}_{4,6}", 4,
                 _c("1 14=alpha; 2 24=beta; 2 34=1; 3 24=-1; 3 34=beta"),
                 params=("alpha", "beta"), range_text="alpha != 0, beta >= 0",
                 check=lambda alpha, beta: alpha != 0 and beta >= 0,
                 samples=((F(1), F(0)), (F(-1, 2), F(1)), (F(2), F(1, 3)))),
    CatalogEntry("A4,7", "A_{4,7}", 4,
                 _c("1 14=2; 2 24=1; 1 23=1; 2 34=1; 3 34=1")),
    CatalogEntry("A4,8", "A_{4,8}", 4, _c("1 23=1; 2 24=1; 3 34=-1")),
    CatalogEntry("A4,9", "A^beta_{4,9}", 4,
                 _c("1 23=1; 1 14=(+ 1 beta); 2 24=1; 3 34=beta"),
                 params=("beta",), range_text="-1 < beta <= 1",
                 check=lambda beta: -1 < beta <= 1,
                 samples=((F(0),), (F(1, 2),), (F(1),))),
    CatalogEntry("A4,10", "A_{4,10}", 4, _c("1 23=1; 2 34=1; 3 24=-1")),
    CatalogEntry("A4,11", "A^alpha_{4,11}", 4,
                 _c("1 23=1; 1 14=(* 2 alpha); 2 24=alpha; 3 24=-1; "
                    "2 34=1; 3 34=alpha"),
                 params=("alpha",), range_text="alpha > 0",
                 check=lambda alpha: alpha > 0,
                 samples=((F(1, 4),), (F(1),), (F(4),))),
    CatalogEntry("A4,12", "A_{4,12}", 4, _c("1 13=1; 1 24=1; 2 14=-1; 2 23=1")),
]

# special members of parameterized families that carry their own names
_FIXED_ALIASES = {
    "A3,4": ("Bianchi_VI_h", {"h": F(-1)}),
    "E(1,1)": ("Bianchi_VI_h", {"h": F(-1)}),
    "A3,6": ("Bianchi_VII_h", {"h": F(0)}),
    "E(2)": ("Bianchi_VII_h", {"h": F(0)}),
}
# family aliases whose parameter is renamed
_RENAMED = {
    "A3,5": ("Bianchi_VI_h", "alpha", "h", lambda a: 0 < abs(a) < 1,
             "0 < |alpha| < 1"),
    "A3,7": ("Bianchi_VII_h", "alpha", "h", lambda a: a > 0, "alpha > 0"),
}

CATALOG = {e.key: e for e in _ENTRIES}
_ALIASES = {}
for _e in _ENTRIES:
    for _a in _e.aliases:
        _ALIASES[_a] = _e.key


def catalog_keys(dim=None):
    """Primary catalog keys in catalog order, optionally for one dimension."""
    return [e.key for e in _ENTRIES if dim is None or e.dim == dim]


def _normalize(name):
    return name.strip().replace("⊕", "+").replace(" ", "")


def resolve_name(name):
    """Map a key or alias to ``(entry, fixed_params, renamed)``."""
    raw = _normalize(name)
    if raw in CATALOG:
        return CATALOG[raw], {}, None
    if raw in _ALIASES:
        return CATALOG[_ALIASES[raw]], {}, None
    if raw in _FIXED_ALIASES:
        key, fixed = _FIXED_ALIASES[raw]
        return CATALOG[key], dict(fixed), None
    if raw in _RENAMED:
        key, *rest = _RENAMED[raw]
        return CATALOG[key], {}, rest
    raise UnknownAlgebraError(f"unknown algebra {name!r}")


def catalog_lookup(name, params=None, **kwargs):
    """Return the :class:`AlgebraDescriptor` for a catalog name.

    Parameters
    ----------
    name : str
        Catalog key or alias (``"A3,5"``, ``"A3,8+A1"``, ``"A3,8⊕A1"``, ...).
    params : dict, optional
        Parameter values; also accepted as keyword arguments. Values are
        converted exactly (``"1/2"``, ints, Fractions).
    """
    entry, fixed, renamed = resolve_name(name)
    given = dict(params or {})
    given.update(kwargs)
    given = {k: exact.to_fraction(v) for k, v in given.items()}
    if renamed is not None:
        alias_param, family_param, check, text = renamed
        if alias_param not in given:
            raise InputError(f"{name} needs parameter {alias_param!r}")
        value = given.pop(alias_param)
        if given:
            raise InputError(f"unexpected parameters {sorted(given)}")
        if not check(value):
            raise ParameterRangeError(
                f"{name}: {alias_param}={exact.format_fraction(value)} "
                f"outside range {text}")
        given = {family_param: value}
    elif fixed:
        if given:
            raise InputError(f"{name} takes no parameters")
        given = fixed
    missing = [p for p in entry.params if p not in given]
    extra = [p for p in given if p not in entry.params]
    if missing:
        raise InputError(f"{entry.key} needs parameters {missing}")
    if extra:
        raise InputError(f"{entry.key} takes no parameters {extra}")
    values = {p: given[p] for p in entry.params}
    if not entry.in_range(values):
        shown = ", ".join(f"{k}={exact.format_fraction(v)}" for k, v in values.items())
        raise ParameterRangeError(
            f"{entry.key}: {shown} outside range {entry.range_text}")
    entries = []
    for m, k, l, text in entry.constants:
        e = substitute(parse(text), {p: Const(v) for p, v in values.items()})
        if not isinstance(e, Const):
            raise InputError(f"constant {text!r} did not reduce to a number")
        if e.value != 0:
            entries.append((m, k, l, e.value))
    return AlgebraDescriptor(entry.key, StructureConstants(entry.dim, entries),
                             values, entry.title)


def sample_descriptors(dim=None):
    """Every catalog entry, with each family at its sample parameters."""
    out = []
    for e in _ENTRIES:
        if dim is not None and e.dim != dim:
            continue
        for sample in e.samples:
            out.append(catalog_lookup(e.key, dict(zip(e.params, sample))))
    return out
