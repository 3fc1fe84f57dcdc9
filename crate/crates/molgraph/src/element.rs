//! Heavy-atom elements and bond classes.
//!
//! Hydrogen is never stored as a graph node; it is derived per atom from the
//! valence model (see [`crate::MolecularGraph::implicit_h`]).

/// The seven heavy elements supported by the molecular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Element {
    C = 0,
    N = 1,
    O = 2,
    S = 3,
    F = 4,
    Cl = 5,
    Br = 6,
}

pub const ELEMENT_COUNT: usize = 7;

/// All elements in class-index order.
pub const ALL_ELEMENTS: [Element; ELEMENT_COUNT] = [
    Element::C,
    Element::N,
    Element::O,
    Element::S,
    Element::F,
    Element::Cl,
    Element::Br,
];

/// Mass of one implicit hydrogen in daltons.
pub const HYDROGEN_MASS: f64 = 1.008;

impl Element {
    /// Class index used by one-hot encodings (0..7).
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(idx: usize) -> Option<Element> {
        ALL_ELEMENTS.get(idx).copied()
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::S => "S",
            Element::F => "F",
            Element::Cl => "Cl",
            Element::Br => "Br",
        }
    }

    /// Lowercase symbol used for aromatic atoms in SMILES. Only C, N, O and S
    /// may be aromatic in the accepted subset.
    pub fn aromatic_symbol(self) -> Option<&'static str> {
        match self {
            Element::C => Some("c"),
            Element::N => Some("n"),
            Element::O => Some("o"),
            Element::S => Some("s"),
            _ => None,
        }
    }

    pub fn from_symbol(sym: &str) -> Option<Element> {
        match sym {
            "C" => Some(Element::C),
            "N" => Some(Element::N),
            "O" => Some(Element::O),
            "S" => Some(Element::S),
            "F" => Some(Element::F),
            "Cl" => Some(Element::Cl),
            "Br" => Some(Element::Br),
            _ => None,
        }
    }

    /// Standard atomic weight, daltons (4 decimal places).
    pub fn mass(self) -> f64 {
        match self {
            Element::C => 12.0110,
            Element::N => 14.0070,
            Element::O => 15.9990,
            Element::S => 32.0600,
            Element::F => 18.9984,
            Element::Cl => 35.4500,
            Element::Br => 79.9040,
        }
    }

    /// Allowed valences, ascending.
    pub fn allowed_valences(self) -> &'static [u8] {
        match self {
            Element::C => &[4],
            Element::N => &[3],
            Element::O => &[2],
            Element::S => &[2, 4, 6],
            Element::F => &[1],
            Element::Cl => &[1],
            Element::Br => &[1],
        }
    }

    /// Smallest allowed valence.
    pub fn default_valence(self) -> u8 {
        self.allowed_valences()[0]
    }

    /// Largest allowed valence.
    pub fn max_valence(self) -> u8 {
        *self.allowed_valences().last().unwrap()
    }
}

/// Bond classes. `None` is a first-class diffusion state (the absent edge),
/// not a parse product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum BondClass {
    #[default]
    None = 0,
    Single = 1,
    Double = 2,
    Triple = 3,
    Aromatic = 4,
}

pub const BOND_CLASS_COUNT: usize = 5;

pub const ALL_BOND_CLASSES: [BondClass; BOND_CLASS_COUNT] = [
    BondClass::None,
    BondClass::Single,
    BondClass::Double,
    BondClass::Triple,
    BondClass::Aromatic,
];

impl BondClass {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(idx: usize) -> Option<BondClass> {
        ALL_BOND_CLASSES.get(idx).copied()
    }

    /// Contribution to an atom's bond-order sum. Aromatic counts 1.5.
    pub fn order(self) -> f64 {
        match self {
            BondClass::None => 0.0,
            BondClass::Single => 1.0,
            BondClass::Double => 2.0,
            BondClass::Triple => 3.0,
            BondClass::Aromatic => 1.5,
        }
    }

    /// Integer order for kekulized graphs; aromatic has none.
    pub fn integer_order(self) -> Option<u8> {
        match self {
            BondClass::None => Some(0),
            BondClass::Single => Some(1),
            BondClass::Double => Some(2),
            BondClass::Triple => Some(3),
            BondClass::Aromatic => None,
        }
    }

    #[inline]
    pub fn is_present(self) -> bool {
        self != BondClass::None
    }
}
