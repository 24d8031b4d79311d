"""The eight seed exercises shipped with the catalog.

Each seed pairs a decomposed reference program with the unstructured form
students start from.  Five are produced mechanically by the generation
pipeline (inlining, scaled for fish, hoisted for garden); the other three
are hand-written rearrangements with explicit annotations, because their
point is a statement layout the pipeline does not emit: the count folded
inside the min scan, the two scans interleaved, and the cube fits shuffled
around an early initializer.

Labels are frozen as (repetition, composition, data); the tests assert the
classifier reproduces every one of them from the sources.
"""

from dataclasses import dataclass

from . import lang
from .analysis import TaskAnnotation
from .transform import generate


@dataclass(frozen=True)
class SeedSpec:
    name: str
    title: str
    description: str
    tags: tuple
    label: tuple
    decomposed: str
    suite: tuple
    scales: tuple = None   # scaled inlining (fish)
    hoist: bool = False    # pull the shared expression out (garden)
    unstructured: str = None         # hand-written seeds supply the text
    annotation: TaskAnnotation = None  # ... and the annotation to match


def build(spec):
    """Materialize a seed: (unstructured program, annotation, provenance).

    Hand-written seeds parse as-is and carry no provenance; the rest run the
    generation pipeline on the decomposed reference.
    """
    if spec.unstructured is not None:
        return lang.parse(spec.unstructured), spec.annotation, None
    res = generate(lang.parse(spec.decomposed),
                   scales=list(spec.scales) if spec.scales else None,
                   hoist=spec.hoist)
    return res.unstructured, res.annotation, res.provenance


# ---------------------------------------------------------------------------
# fish: the same drawing at three sizes, widths affine in the size

FISH = """\
func draw_fish(size: int, sofar: int) -> int {
    width = 4 * size + 7
    for i in range(0, size + 1) {
        w = 2 * i + 1
        pad = (width - w) / 2
        line = ""
        for j in range(0, pad) {
            line = line + " "
        }
        for j in range(0, w) {
            line = line + "*"
        }
        print(line)
    }
    for i in range(0, 2 * size + 2) {
        w = width - 2 * (i % 2)
        pad = (width - w) / 2
        line = ""
        for j in range(0, pad) {
            line = line + " "
        }
        for j in range(0, w) {
            line = line + "*"
        }
        print(line)
    }
    for i in range(0, size + 1) {
        w = 2 * size + 1 - 2 * i
        pad = (width - w) / 2
        line = ""
        for j in range(0, pad) {
            line = line + " "
        }
        for j in range(0, w) {
            line = line + "*"
        }
        print(line)
    }
    return sofar + 1
}

func fish_summary(owner: string, total: int) -> void {
    print("owner", owner)
    print("fish drawn", total)
}

func main(owner: string) -> int {
    n = 0
    n = draw_fish(1, n)
    n = draw_fish(2, n)
    n = draw_fish(3, n)
    fish_summary(owner, n)
    return n
}
"""


# ---------------------------------------------------------------------------
# old-macdonald: three verses differing only in the animal and its sound

OLD_MACDONALD = """\
func verse(farmer: string, animal: string, sound: string) -> void {
    print(farmer, "had a farm, ee i ee i o")
    print("and on that farm he had a", animal)
    print("with a", sound, sound, "here and a", sound, sound, "there")
    print("here a", sound, "there a", sound)
    print(farmer, "had a farm, ee i ee i o")
}

func farewell() -> void {
    print("and that is the whole song")
}

func main(name: string) -> int {
    farmer = name + " MacDonald"
    verse(farmer, "cow", "moo")
    verse(farmer, "pig", "oink")
    verse(farmer, "duck", "quack")
    farewell()
    return 0
}
"""


# ---------------------------------------------------------------------------
# twice-block: a verbatim duplicated block, then an unrelated loop

TWICE_BLOCK = """\
func cheer() -> void {
    print("hip")
    print("hip")
    print("hooray")
}

func drumroll(beats: int) -> void {
    for i in range(0, beats) {
        print("ratatat")
    }
}

func main(beats: int) -> int {
    cheer()
    cheer()
    drumroll(beats)
    return 0
}
"""


# ---------------------------------------------------------------------------
# the min/count family: one goal (smallest value and how often it occurs),
# three statement layouts

MIN_COUNT_DECOMPOSED = """\
func find_min(xs: list) -> int {
    m = xs[0]
    for i in range(0, len(xs)) {
        if xs[i] < m {
            m = xs[i]
        }
    }
    return m
}

func count_value(xs: list, v: int) -> int {
    c = 0
    for i in range(0, len(xs)) {
        if xs[i] == v {
            c = c + 1
        }
    }
    return c
}

func main(xs: list) -> int {
    m = find_min(xs)
    c = count_value(xs, m)
    print("min", m)
    print("count", c)
    return c
}
"""

# the counting block runs inside the scan: reset on a new minimum, start on
# the first element, bump on every element equal to the running minimum
MIN_COUNT_INCLUSION = """\
func main(xs: list) -> int {
    m = xs[0]
    for i in range(0, len(xs)) {
        if xs[i] <= m {
            if i == 0 {
                c = 0
            }
            if xs[i] < m {
                c = 0
            }
            c = c + 1
            m = xs[i]
        }
    }
    print("min", m)
    print("count", c)
    return c
}
"""

# sids: 0 m / 1 for / 2 if<= / 8 m=xs[i] scan the minimum; 3-7 count inside
MIN_COUNT_INCLUSION_ANN = TaskAnnotation(
    {0: 1, 1: 1, 2: 1, 3: 2, 4: 2, 5: 2, 6: 2, 7: 2, 8: 1,
     9: 0, 10: 0, 11: 0},
    {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0, 8: 0},
    {1: "find_min", 2: "count_value"},
)

MIN_COUNT_INTERLEAVED = """\
func main(xs: list) -> int {
    m = xs[0]
    c = 1
    for i in range(1, len(xs)) {
        if xs[i] < m {
            m = xs[i]
            c = 1
        } else {
            if xs[i] == m {
                c = c + 1
            }
        }
    }
    print("min", m)
    print("count", c)
    return c
}
"""

# the count state (1, 5, 6, 7) threads through the scan (0, 2, 3, 4)
MIN_COUNT_INTERLEAVED_ANN = TaskAnnotation(
    {0: 1, 1: 2, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 2, 8: 0, 9: 0, 10: 0},
    {0: 0, 1: 0, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0},
    {1: "find_min", 2: "count_value"},
)

MIN_COUNT_SUITE = (
    [[3, 1, 1]], [[5]], [[2, 5, 2]], [[4, 4, 4]], [[3, 2, 1]], [[1, 2, 3]],
    [[7, 7, 1, 7]], [[10, -3, -3, 4]], [[0]], [[9, 8, 9, 8, 7, 7]],
    [[2, 1, 2, 1]], [[]],
)


# ---------------------------------------------------------------------------
# rubiks: how many cubes fit in a box, with the three fits rearranged by hand
# around an early total initializer

RUBIKS_DECOMPOSED = """\
func fit_width(size: int, side: int) -> int {
    spare = size % side
    fit = (size - spare) / side
    return fit
}

func fit_height(size: int, side: int) -> int {
    spare = size % side
    fit = (size - spare) / side
    return fit
}

func fit_depth(size: int, side: int) -> int {
    spare = size % side
    fit = (size - spare) / side
    return fit
}

func total_cubes(a: int, b: int, c: int) -> int {
    return a * b * c
}

func main(w: int, h: int, d: int, side: int) -> int {
    fw = fit_width(w, side)
    fh = fit_height(h, side)
    fd = fit_depth(d, side)
    total = total_cubes(fw, fh, fd)
    print(total)
    return total
}
"""

RUBIKS = """\
func main(w: int, h: int, d: int, side: int) -> int {
    spare_w = w % side
    total = 0
    fw = (w - spare_w) / side
    spare_h = h % side
    fh = (h - spare_h) / side
    spare_d = d % side
    fd = (d - spare_d) / side
    total = fw * fh * fd
    print(total)
    return total
}
"""

# total = 0 (sid 1) splits the width fit (sids 0 and 2)
RUBIKS_ANN = TaskAnnotation(
    {0: 1, 1: 0, 2: 1, 3: 2, 4: 2, 5: 3, 6: 3, 7: 4, 8: 0, 9: 0},
    {0: 0, 2: 0, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0},
    {1: "fit_width", 2: "fit_height", 3: "fit_depth", 4: "total_cubes"},
)


# ---------------------------------------------------------------------------
# garden: soil and water volumes both read one hoisted inner-circle area;
# the plant count computes its own copy, written with different grouping

GARDEN = """\
func soil_volume(r: float, side: float, depth: float) -> float {
    area = 3.141592 * r * r
    soil = (side * side - area) * depth
    return soil
}

func water_volume(r: float, depth: float) -> float {
    area = 3.141592 * r * r
    fill = area * depth
    return fill
}

func plant_count(r: float, per_plant: float) -> int {
    area = 3.141592 * (r * r)
    n = 0
    while (n + 1) * per_plant <= area {
        n = n + 1
    }
    return n
}

func main(r: float, side: float, depth: float, per_plant: float) -> void {
    soil = soil_volume(r, side, depth)
    water = water_volume(r, depth)
    plants = plant_count(r, per_plant)
    print("soil", soil)
    print("water", water)
    print("plants", plants)
}
"""


SEEDS = [
    SeedSpec(
        name="fish",
        title="Fish of Three Sizes",
        description="Draw the same fish at sizes 1, 2 and 3, then report "
                    "the owner and how many fish were drawn.",
        tags=("drawing", "loops"),
        label=(3, 1, 1),
        decomposed=FISH,
        scales=(1, 2, 3),
        suite=tuple([name] for name in
                    ["Ada", "Grace", "Alan", "Edsger", "Barbara", "Donald",
                     "Tony", "Radia", "Ken", "Margaret"]),
    ),
    SeedSpec(
        name="old-macdonald",
        title="Old MacDonald",
        description="Print three verses of the song for a farmer named "
                    "after the input, then sign off.",
        tags=("song", "strings"),
        label=(2, 1, 1),
        decomposed=OLD_MACDONALD,
        suite=tuple([name] for name in
                    ["Old", "Ada", "Grandpa Joe", "Mx", "Farmer", "Mary",
                     "Sam", "Pat", "Jo", "Lee"]),
    ),
    SeedSpec(
        name="twice-block",
        title="Double Cheer",
        description="Cheer twice with the exact same block, then play a "
                    "drumroll with the given number of beats.",
        tags=("blocks", "loops"),
        label=(1, 1, 0),
        decomposed=TWICE_BLOCK,
        suite=tuple([b] for b in range(10)),
    ),
    SeedSpec(
        name="min-count-concat",
        title="Minimum, Then Count",
        description="Find the smallest value in a list, then count how "
                    "often it occurs, one scan after the other.",
        tags=("lists", "aggregation"),
        label=(0, 1, 1),
        decomposed=MIN_COUNT_DECOMPOSED,
        suite=MIN_COUNT_SUITE,
    ),
    SeedSpec(
        name="min-count-inclusion",
        title="Count Inside the Scan",
        description="Count occurrences of the minimum from within the "
                    "minimum scan itself, restarting whenever a smaller "
                    "value appears.",
        tags=("lists", "aggregation"),
        label=(0, 2, 1),
        decomposed=MIN_COUNT_DECOMPOSED,
        suite=MIN_COUNT_SUITE,
        unstructured=MIN_COUNT_INCLUSION,
        annotation=MIN_COUNT_INCLUSION_ANN,
    ),
    SeedSpec(
        name="min-count-interleaved",
        title="Minimum and Count Entangled",
        description="One pass over the list that updates the minimum and "
                    "its count in alternation.",
        tags=("lists", "aggregation"),
        label=(0, 3, 2),
        decomposed=MIN_COUNT_DECOMPOSED,
        suite=MIN_COUNT_SUITE,
        unstructured=MIN_COUNT_INTERLEAVED,
        annotation=MIN_COUNT_INTERLEAVED_ANN,
    ),
    SeedSpec(
        name="rubiks",
        title="Cube Packing",
        description="How many side-length cubes fit in a box, computed one "
                    "dimension at a time with the steps shuffled together.",
        tags=("arithmetic", "geometry"),
        label=(0, 1, 2),
        decomposed=RUBIKS_DECOMPOSED,
        suite=(
            [10, 10, 10, 3], [2, 3, 4, 5], [12, 12, 12, 4], [7, 5, 3, 2],
            [9, 9, 9, 1], [100, 50, 25, 5], [1, 1, 1, 1], [8, 6, 4, 3],
            [30, 20, 10, 7], [15, 15, 15, 6], [11, 13, 17, 3],
            [10, 10, 10, 0],
        ),
        unstructured=RUBIKS,
        annotation=RUBIKS_ANN,
    ),
    SeedSpec(
        name="garden",
        title="Garden Volumes",
        description="Soil to remove, water to fill, and plants that fit "
                    "for a circular bed in a square garden; the two volume "
                    "formulas share the inner-circle area.",
        tags=("geometry", "floats"),
        label=(0, 1, 3),
        decomposed=GARDEN,
        hoist=True,
        suite=(
            [1.0, 4.0, 0.5, 0.5], [2.0, 6.0, 1.0, 1.0],
            [0.5, 2.0, 0.25, 0.5], [1.5, 5.0, 0.75, 2.0],
            [3.0, 8.0, 0.5, 1.5], [2.5, 7.0, 2.0, 3.0],
            [1.0, 3.0, 1.0, 0.5], [0.75, 2.5, 0.4, 0.6],
            [2.0, 5.0, 0.3, 2.5], [1.25, 4.5, 0.8, 1.0],
            [3.0, 10.0, 1.5, 4.0], [0.25, 1.0, 0.1, 0.2],
        ),
    ),
]


def seed(name):
    """Look up a seed by its catalog id."""
    for s in SEEDS:
        if s.name == name:
            return s
    raise KeyError(name)
