namespace hgc {}
