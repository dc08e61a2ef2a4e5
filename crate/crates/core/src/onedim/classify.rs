use super::OneDimError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    Boundary,
    Mirror,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OneOrbifoldComponent {
    Loop,
    Interval(End, End),
}

/// (a) circle, (b) interval with two boundary points, (c) one boundary
/// point and one mirror point, (d) two mirror points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OneOrbifoldType {
    A,
    B,
    C,
    D,
}

impl OneOrbifoldType {
    pub fn letter(self) -> char {
        match self {
            OneOrbifoldType::A => 'a',
            OneOrbifoldType::B => 'b',
            OneOrbifoldType::C => 'c',
            OneOrbifoldType::D => 'd',
        }
    }

    pub fn boundary_points(self) -> usize {
        match self {
            OneOrbifoldType::A | OneOrbifoldType::D => 0,
            OneOrbifoldType::B => 2,
            OneOrbifoldType::C => 1,
        }
    }
}

pub fn classify_1_orbifold(c: OneOrbifoldComponent) -> OneOrbifoldType {
    use End::*;
    match c {
        OneOrbifoldComponent::Loop => OneOrbifoldType::A,
        OneOrbifoldComponent::Interval(Boundary, Boundary) => OneOrbifoldType::B,
        OneOrbifoldComponent::Interval(Boundary, Mirror) | OneOrbifoldComponent::Interval(Mirror, Boundary) => {
            OneOrbifoldType::C
        }
        OneOrbifoldComponent::Interval(Mirror, Mirror) => OneOrbifoldType::D,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub boundary_points: usize,
    pub even: bool,
}

/// Boundary-point count of a family of type (a)/(b) components.
pub fn boundary_parity(components: &[OneOrbifoldComponent]) -> Result<ParityReport, OneDimError> {
    let mut total = 0;
    for (i, &c) in components.iter().enumerate() {
        let t = classify_1_orbifold(c);
        if matches!(t, OneOrbifoldType::C | OneOrbifoldType::D) {
            return Err(OneDimError::MirrorComponent { index: i, kind: t.letter() });
        }
        total += t.boundary_points();
    }
    Ok(ParityReport { boundary_points: total, even: total % 2 == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use End::*;

    #[test]
    fn four_types() {
        assert_eq!(classify_1_orbifold(OneOrbifoldComponent::Loop), OneOrbifoldType::A);
        assert_eq!(classify_1_orbifold(OneOrbifoldComponent::Interval(Boundary, Boundary)), OneOrbifoldType::B);
        assert_eq!(classify_1_orbifold(OneOrbifoldComponent::Interval(Boundary, Mirror)), OneOrbifoldType::C);
        assert_eq!(classify_1_orbifold(OneOrbifoldComponent::Interval(Mirror, Mirror)), OneOrbifoldType::D);
    }

    #[test]
    fn parity_counts() {
        let b = OneOrbifoldComponent::Interval(Boundary, Boundary);
        let r = boundary_parity(&[OneOrbifoldComponent::Loop, b, b]).unwrap();
        assert_eq!(r, ParityReport { boundary_points: 4, even: true });
        assert_eq!(boundary_parity(&[OneOrbifoldComponent::Loop]).unwrap().boundary_points, 0);
        assert!(matches!(
            boundary_parity(&[OneOrbifoldComponent::Interval(Mirror, Boundary)]),
            Err(OneDimError::MirrorComponent { index: 0, kind: 'c' })
        ));
    }
}
