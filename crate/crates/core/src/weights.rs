//! Protected weight cells.
//!
//! Every edge weight and every derived sum lives in a [`WeightArena`]. Callers
//! hold opaque [`WeightHandle`]s and may only combine them with [`WeightArena::add`]
//! or order them with [`WeightArena::compare`]; both are counted. Raw values are
//! reachable only through [`WeightArena::audit`], which exists for oracles, file
//! emission and input validation and never touches the counters.
//!
//! Values are exact: each arena fixes a decimal scale `10^p` and stores numerators
//! over that common denominator, so sums never round.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

static NEXT_ARENA_ID: AtomicU32 = AtomicU32::new(1);

/// Opaque reference to a cell of one particular arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightHandle {
    arena: u32,
    index: u32,
}

/// Counter snapshot: `(comparisons, additions)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub comparisons: u64,
    pub additions: u64,
}

impl Counters {
    /// Counts accumulated since `earlier`.
    pub fn since(self, earlier: Counters) -> Counters {
        Counters {
            comparisons: self.comparisons - earlier.comparisons,
            additions: self.additions - earlier.additions,
        }
    }
}

/// Append-only store of protected nonnegative values.
pub struct WeightArena {
    id: u32,
    decimals: u32,
    mask: u128,
    cells: RefCell<Vec<u128>>,
    comparisons: Cell<u64>,
    additions: Cell<u64>,
}

impl fmt::Debug for WeightArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightArena")
            .field("id", &self.id)
            .field("decimals", &self.decimals)
            .field("cells", &self.cells.borrow().len())
            .field("counters", &self.counters())
            .finish()
    }
}

/// Largest supported number of decimal places.
pub const MAX_DECIMALS: u32 = 18;

impl WeightArena {
    /// Arena whose values are multiples of `10^-decimals`.
    pub fn new(decimals: u32) -> Self {
        assert!(decimals <= MAX_DECIMALS, "at most {MAX_DECIMALS} decimal places supported");
        let id = NEXT_ARENA_ID.fetch_add(1, AtomicOrdering::Relaxed);
        // Cheap scrambling so that a stray read of the backing vector is garbage.
        let mask = (u128::from(id)).wrapping_mul(0x9e37_79b9_7f4a_7c15_f39c_c060_5ced_c835);
        let arena = WeightArena {
            id,
            decimals,
            mask,
            cells: RefCell::new(Vec::new()),
            comparisons: Cell::new(0),
            additions: Cell::new(0),
        };
        arena.push(0);
        arena
    }

    /// Integer-valued arena.
    pub fn integral() -> Self {
        Self::new(0)
    }

    pub fn decimals(&self) -> u32 {
        self.decimals
    }

    /// `10^decimals`.
    pub fn denominator(&self) -> u128 {
        10u128.pow(self.decimals)
    }

    /// Handle to the constant zero.
    pub fn zero(&self) -> WeightHandle {
        WeightHandle { arena: self.id, index: 0 }
    }

    /// Stores an original weight given as a numerator over [`Self::denominator`].
    pub fn insert_scaled(&self, numerator: u128) -> WeightHandle {
        self.push(numerator)
    }

    /// Stores the integer `value`.
    pub fn insert_integer(&self, value: u64) -> WeightHandle {
        let num = u128::from(value)
            .checked_mul(self.denominator())
            .expect("weight overflows the arena's fixed-point range");
        self.push(num)
    }

    /// Number of cells, including the zero cell.
    pub fn len(&self) -> usize {
        self.cells.borrow().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Protected addition. Counts one addition.
    pub fn add(&self, a: WeightHandle, b: WeightHandle) -> WeightHandle {
        let x = self.read(a);
        let y = self.read(b);
        self.additions.set(self.additions.get().saturating_add(1));
        let sum = x.checked_add(y).expect("protected sum overflows the arena's range");
        self.push(sum)
    }

    /// Protected comparison: the sign of `value(a) - value(b)`. Counts one comparison.
    pub fn compare(&self, a: WeightHandle, b: WeightHandle) -> Ordering {
        let x = self.read(a);
        let y = self.read(b);
        self.comparisons.set(self.comparisons.get().saturating_add(1));
        x.cmp(&y)
    }

    pub fn counters(&self) -> Counters {
        Counters {
            comparisons: self.comparisons.get(),
            additions: self.additions.get(),
        }
    }

    pub fn reset_counters(&self) {
        self.comparisons.set(0);
        self.additions.set(0);
    }

    /// Uncounted access to raw values. Only oracles, validation and emission use it.
    pub fn audit(&self) -> Audit<'_> {
        Audit { arena: self }
    }

    fn push(&self, value: u128) -> WeightHandle {
        let mut cells = self.cells.borrow_mut();
        let index = u32::try_from(cells.len()).expect("arena exceeds 2^32 cells");
        cells.push(value ^ self.mask);
        WeightHandle { arena: self.id, index }
    }

    fn read(&self, h: WeightHandle) -> u128 {
        assert_eq!(h.arena, self.id, "weight handle used with a foreign arena");
        self.cells.borrow()[h.index as usize] ^ self.mask
    }
}

/// Uncounted view of an arena's raw values.
#[derive(Clone, Copy)]
pub struct Audit<'a> {
    arena: &'a WeightArena,
}

impl Audit<'_> {
    /// Numerator over the arena's denominator.
    pub fn scaled(&self, h: WeightHandle) -> u128 {
        self.arena.read(h)
    }

    pub fn compare(&self, a: WeightHandle, b: WeightHandle) -> Ordering {
        self.arena.read(a).cmp(&self.arena.read(b))
    }

    pub fn to_f64(&self, h: WeightHandle) -> f64 {
        self.arena.read(h) as f64 / self.arena.denominator() as f64
    }

    /// Exact decimal rendering, trailing zeros trimmed.
    pub fn to_decimal(&self, h: WeightHandle) -> String {
        format_scaled(self.arena.read(h), self.arena.decimals)
    }
}

/// Renders `num / 10^decimals` exactly.
pub fn format_scaled(num: u128, decimals: u32) -> String {
    let den = 10u128.pow(decimals);
    let int = num / den;
    let frac = num % den;
    if frac == 0 {
        return int.to_string();
    }
    let digits = format!("{:0width$}", frac, width = decimals as usize);
    format!("{int}.{}", digits.trim_end_matches('0'))
}

/// Parses a nonnegative decimal such as `3`, `3.50` or `.5` into `(mantissa, fraction digits)`.
pub fn parse_decimal(text: &str) -> Option<(u128, u32)> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let frac = frac.trim_end_matches('0');
    let digits = u32::try_from(frac.len()).ok()?;
    if digits > MAX_DECIMALS {
        return None;
    }
    let mut mantissa: u128 = 0;
    for b in int.bytes().chain(frac.bytes()) {
        mantissa = mantissa.checked_mul(10)?.checked_add(u128::from(b - b'0'))?;
    }
    Some((mantissa, digits))
}
