# Views package