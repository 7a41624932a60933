//! Level homs of symmetric sequences and the tensor–hom adjunction.
